#pragma once

#include <stdexcept>
#include <string>

namespace sfl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config file could not be read or parsed (CLI exit code 2).
struct ParseError : Error {
  using Error::Error;
};

// Config parsed but violates a declared invariant (CLI exit code 3).
struct InvariantError : Error {
  using Error::Error;
};

// Geometry precondition violated at run time (CLI exit code 4).
struct GeometryError : Error {
  using Error::Error;
};

}  // namespace sfl
