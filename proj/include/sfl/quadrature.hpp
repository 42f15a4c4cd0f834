#pragma once

#include <vector>

#include "sfl/config.hpp"
#include "sfl/geometry.hpp"

// Midpoint quadrature cells over the source support in cylindrical
// coordinates, with nested refinement where the retarded phase varies too
// much across a cell and an optional azimuthal boost around the filament
// azimuth. Cell enumeration order is deterministic (base cells in
// lexicographic (r, phi, z) order, children depth-first), which fixes the
// reduction order.

namespace sfl {

struct QuadratureSpec {
  int n_r = 8, n_phi = 64, n_z = 16;
  int max_refine = 1;             // L; nested halvings per cell
  double phase_tol = pi / 4.0;    // refine while the phase span exceeds this
  double filament_boost = 1.0;    // pre-split factor for phi cells near the filament
  double filament_halfwidth = 0.3;  // rad; band around the filament azimuth

  void validate() const;  // throws InvariantError for counts < 2 etc.
};

struct SourceCell {
  double r, phi, z;     // center
  double dr, dphi, dz;  // extents
  double measure;       // r * dr * dphi * dz
};

// Leaf cells for one observation point; `x_P` controls phase-span
// estimates and the filament boost window.
std::vector<SourceCell> build_cells(const SourceConfig& cfg, const QuadratureSpec& q,
                                    const Vec3& x_P, int max_refine_override = -1);

// Same base grid with every count halved; used as the L = 0 error reference.
QuadratureSpec coarsened(const QuadratureSpec& q);

}  // namespace sfl
