#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

// Basic vector algebra and coordinate conversions. Internal units are
// dimensionless throughout: c = 1 and the pattern angular frequency
// omega = 1, so the light cylinder sits at r = 1.

namespace sfl {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr double norm2() const { return x * x + y * y + z * z; }
  Vec3 normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::domain_error("normalized(): zero vector");
    return *this / n;
  }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Cylindrical {
  double r = 0.0, phi = 0.0, z = 0.0;
};

struct Spherical {
  double R = 0.0, theta = 0.0, phi = 0.0;  // polar angle theta from +z
};

// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double a) {
  double w = std::fmod(a, two_pi);
  if (w < 0.0) w += two_pi;
  return w;
}

inline Vec3 to_cartesian(const Cylindrical& c) {
  return {c.r * std::cos(c.phi), c.r * std::sin(c.phi), c.z};
}

inline Cylindrical to_cylindrical(const Vec3& v) {
  return {std::hypot(v.x, v.y), wrap_angle(std::atan2(v.y, v.x)), v.z};
}

inline Vec3 to_cartesian(const Spherical& s) {
  const double st = std::sin(s.theta);
  return {s.R * st * std::cos(s.phi), s.R * st * std::sin(s.phi), s.R * std::cos(s.theta)};
}

inline Spherical to_spherical(const Vec3& v) {
  const double R = v.norm();
  if (R == 0.0) return {0.0, 0.0, 0.0};
  return {R, std::acos(std::clamp(v.z / R, -1.0, 1.0)), wrap_angle(std::atan2(v.y, v.x))};
}

// Converts a vector given in the cylindrical basis (v_r, v_phi, v_z) at
// azimuth phi into the Cartesian basis.
inline Vec3 cyl_vector_to_cartesian(const Vec3& v_cyl, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {v_cyl.x * c - v_cyl.y * s, v_cyl.x * s + v_cyl.y * c, v_cyl.z};
}

struct SpacetimePoint {
  Vec3 pos;
  double t = 0.0;

  static SpacetimePoint from_cylindrical(double r, double phi, double z, double t) {
    return {to_cartesian(Cylindrical{r, phi, z}), t};
  }
  static SpacetimePoint from_spherical(double R, double theta, double phi, double t) {
    return {to_cartesian(Spherical{R, theta, phi}), t};
  }
};

}  // namespace sfl
