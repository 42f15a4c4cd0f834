#pragma once

#include <vector>

#include "sfl/errors.hpp"
#include "sfl/geometry.hpp"

// Retarded-time kinematics of a source point in uniform circular motion.
// R(t) = |x(t) - x_P| and the retarded times are the roots of
// g(t) = t_P - t - R(t) (c = 1). A point inside the envelope of wave
// fronts receives three (or more) simultaneous retarded contributions.

namespace sfl {

struct Orbit {
  double radius = 1.0;
  double omega = 1.0;
  double phi0 = 0.0;
  double z = 0.0;

  Vec3 position(double t) const {
    const double a = omega * t + phi0;
    return {radius * std::cos(a), radius * std::sin(a), z};
  }
  double period() const { return two_pi / std::abs(omega); }
};

struct RadialMotion {
  double R;      // distance source -> observer
  double Rdot;   // dR/dt
  double Rddot;  // d2R/dt2
};

// Closed-form R, Rdot, Rddot for the circular orbit. Throws GeometryError
// if x_P lies on the orbit circle itself (R = 0 possible).
RadialMotion retarded_distance(const Orbit& orb, const Vec3& x_P, double t);

enum class EnvelopeRegion { outside_envelope, inside_envelope, near_cusp };

struct RootSolveParams {
  double periods_back = 3.0;  // window extends this far beyond the earliest light-travel time
  int scan_per_period = 2048;
  double tol_root = 1e-10;   // |g| tolerance
  double tol_merge = 1e-6;   // roots closer than this flag near_cusp
};

struct RootSet {
  std::vector<double> roots;  // ascending retarded times in [0, t_P)
  EnvelopeRegion region = EnvelopeRegion::outside_envelope;
  double window_lo = 0.0, window_hi = 0.0;
  bool near_cusp = false;
};

// All retarded times for observation event P. Region is classified by root
// count: 1 (or 0 before any wavefront arrives) -> outside_envelope,
// >= 3 -> inside_envelope; nearly merged roots flag near_cusp.
RootSet retarded_times(const Orbit& orb, const SpacetimePoint& P,
                       const RootSolveParams& params = {});

// Far-zone polar angle of the cusp cone, arcsin(c/(r omega)). The full
// locus is {theta, pi - theta}. Throws InvariantError for r omega / c < 1.
double cusp_cone_angle(double r_omega_over_c);

// (Rdot + c, Rddot): both vanish simultaneously exactly on the cusp.
std::pair<double, double> cusp_condition_residual(const Orbit& orb, const Vec3& x_P, double t);

struct EnvelopeSample {
  Vec3 pos;
  int n_roots = 0;
  EnvelopeRegion region = EnvelopeRegion::outside_envelope;
  bool transition = false;  // bisected envelope crossing
};

// Classifies points along rays from the rotation axis in a plane through
// the origin and locates the root-count transitions by bisection.
// plane: "xy" (orbital plane) or "xz" (meridional).
std::vector<EnvelopeSample> envelope_section(const Orbit& orb, double t_P,
                                             const std::string& plane, int n_rays,
                                             double max_radius,
                                             const RootSolveParams& params = {});

struct FilamentLocation {
  double r;
  double phi;
};

// Source filament dominating the field seen from direction (theta_P, phi_P):
// r = (c/omega) csc(theta_P), phi = phi_P + 3 pi / 2. Throws for theta in {0, pi}.
FilamentLocation filament_locator(double omega, double theta_P, double phi_P);

// Polar interval of the overall beam:
// arccos[(r_l w/c)^-1] <= |theta_P - pi/2| <= arccos[(r_u w/c)^-1].
bool beam_interval_contains(double theta_P, double r_l, double r_u, double omega = 1.0);

}  // namespace sfl
