#include "sfl/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace sfl {

namespace {

// R^2(t) = r^2 + rho_P^2 + (z - z_P)^2 - 2 r rho_P cos(psi),
// psi = omega t + phi0 - phi_P. Precomputed per observer.
struct DistanceFn {
  double r, w, phi0, dz2, rho_P, phi_P, base;

  DistanceFn(const Orbit& orb, const Vec3& x_P) {
    r = orb.radius;
    w = orb.omega;
    phi0 = orb.phi0;
    rho_P = std::hypot(x_P.x, x_P.y);
    phi_P = std::atan2(x_P.y, x_P.x);
    const double dz = orb.z - x_P.z;
    dz2 = dz * dz;
    base = r * r + rho_P * rho_P + dz2;
  }

  RadialMotion eval(double t) const {
    const double psi = w * t + phi0 - phi_P;
    const double R2 = base - 2.0 * r * rho_P * std::cos(psi);
    const double R = std::sqrt(R2);
    const double f = r * rho_P * w * std::sin(psi);  // = R Rdot
    const double Rdot = f / R;
    const double Rddot = (r * rho_P * w * w * std::cos(psi) - Rdot * Rdot) / R;
    return {R, Rdot, Rddot};
  }

  double R_max() const { return std::sqrt(base + 2.0 * r * rho_P); }
  double R_min() const { return std::sqrt(std::max(0.0, base - 2.0 * r * rho_P)); }
};

}  // namespace

RadialMotion retarded_distance(const Orbit& orb, const Vec3& x_P, double t) {
  const DistanceFn d(orb, x_P);
  if (d.R_min() < 1e-12)
    throw GeometryError("retarded_distance: observation point lies on the orbit circle");
  return d.eval(t);
}

RootSet retarded_times(const Orbit& orb, const SpacetimePoint& P, const RootSolveParams& params) {
  const DistanceFn dist(orb, P.pos);
  if (dist.R_min() < 1e-12)
    throw GeometryError("retarded_times: observation point lies on the orbit circle");

  RootSet rs;
  const double t_P = P.t;
  const double T = orb.period();
  rs.window_hi = t_P;
  rs.window_lo = std::max(0.0, t_P - dist.R_max() - params.periods_back * T);
  if (t_P <= 0.0) return rs;

  auto g = [&](double t) { return t_P - t - dist.eval(t).R; };

  const double span = rs.window_hi - rs.window_lo;
  const int n = std::max(8, static_cast<int>(std::ceil(params.scan_per_period * span / T)));
  const double h = span / n;

  auto polish = [&](double a, double b, double ga, double gb) {
    // bisection to tol_root on |g|; the bracket is kept sign-changing
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      const double gm = g(mid);
      if (std::abs(gm) <= params.tol_root || 0.5 * (b - a) < 1e-16 * std::max(1.0, t_P)) return mid;
      if ((ga < 0.0) != (gm < 0.0)) {
        b = mid;
        gb = gm;
      } else {
        a = mid;
        ga = gm;
      }
    }
    return 0.5 * (a + b);
  };

  double t_prev = rs.window_lo;
  double g_prev = g(t_prev);
  if (g_prev == 0.0) rs.roots.push_back(t_prev);
  for (int i = 1; i <= n; ++i) {
    const double t_i = rs.window_lo + i * h;
    const double g_i = g(t_i);
    if (g_i == 0.0) {
      if (t_i < t_P) rs.roots.push_back(t_i);
    } else if ((g_prev < 0.0) != (g_i < 0.0)) {
      const double root = polish(t_prev, t_i, g_prev, g_i);
      if (root >= 0.0 && root < t_P) rs.roots.push_back(root);
    }
    t_prev = t_i;
    g_prev = g_i;
  }
  std::sort(rs.roots.begin(), rs.roots.end());

  for (std::size_t i = 1; i < rs.roots.size(); ++i)
    if (rs.roots[i] - rs.roots[i - 1] < params.tol_merge) rs.near_cusp = true;

  if (rs.near_cusp)
    rs.region = EnvelopeRegion::near_cusp;
  else
    rs.region = rs.roots.size() >= 3 ? EnvelopeRegion::inside_envelope
                                     : EnvelopeRegion::outside_envelope;
  return rs;
}

double cusp_cone_angle(double r_omega_over_c) {
  if (r_omega_over_c < 1.0)
    throw InvariantError("cusp_cone_angle: no cusp exists for r*omega/c < 1 (got " +
                         std::to_string(r_omega_over_c) + ")");
  return std::asin(1.0 / r_omega_over_c);
}

std::pair<double, double> cusp_condition_residual(const Orbit& orb, const Vec3& x_P, double t) {
  const RadialMotion rm = retarded_distance(orb, x_P, t);
  return {rm.Rdot + 1.0, rm.Rddot};
}

std::vector<EnvelopeSample> envelope_section(const Orbit& orb, double t_P,
                                             const std::string& plane, int n_rays,
                                             double max_radius, const RootSolveParams& params) {
  if (plane != "xy" && plane != "xz")
    throw InvariantError("envelope_section: plane must be 'xy' or 'xz'");
  std::vector<EnvelopeSample> out;

  auto point_at = [&](double angle, double s) -> Vec3 {
    if (plane == "xy") return {s * std::cos(angle), s * std::sin(angle), orb.z};
    return {s * std::sin(angle), 0.0, orb.z + s * std::cos(angle)};  // meridional, angle from +z
  };
  auto count_at = [&](const Vec3& x) -> int {
    return static_cast<int>(retarded_times(orb, {x, t_P}, params).roots.size());
  };

  const int n_steps = 64;
  const double s_min = orb.radius * 1.05 + 1e-3;  // stay off the orbit circle
  for (int k = 0; k < n_rays; ++k) {
    const double angle = two_pi * k / n_rays;
    int prev_count = -1;
    double prev_s = 0.0;
    for (int i = 0; i <= n_steps; ++i) {
      const double s = s_min + (max_radius - s_min) * i / n_steps;
      const Vec3 x = point_at(angle, s);
      const int c = count_at(x);
      EnvelopeSample sample;
      sample.pos = x;
      sample.n_roots = c;
      sample.region = c >= 3 ? EnvelopeRegion::inside_envelope : EnvelopeRegion::outside_envelope;
      out.push_back(sample);
      if (prev_count >= 0 && c != prev_count) {
        // bisect the transition
        double a = prev_s, b = s;
        int ca = prev_count;
        for (int it = 0; it < 48; ++it) {
          const double mid = 0.5 * (a + b);
          const int cm = count_at(point_at(angle, mid));
          if (cm == ca)
            a = mid;
          else
            b = mid;
        }
        EnvelopeSample edge;
        edge.pos = point_at(angle, 0.5 * (a + b));
        edge.n_roots = std::max(prev_count, c);
        edge.region = EnvelopeRegion::near_cusp;
        edge.transition = true;
        out.push_back(edge);
      }
      prev_count = c;
      prev_s = s;
    }
  }
  return out;
}

FilamentLocation filament_locator(double omega, double theta_P, double phi_P) {
  if (theta_P <= 0.0 || theta_P >= pi)
    throw InvariantError("filament_locator: theta_P must lie strictly between 0 and pi");
  const double s = std::sin(theta_P);
  return {1.0 / (omega * s), wrap_angle(phi_P + 1.5 * pi)};
}

bool beam_interval_contains(double theta_P, double r_l, double r_u, double omega) {
  const double a_l = r_l * omega;
  const double a_u = r_u * omega;
  if (a_u <= 1.0) return false;
  const double lo = a_l > 1.0 ? std::acos(1.0 / a_l) : 0.0;
  const double hi = std::acos(1.0 / a_u);
  const double dev = std::abs(theta_P - 0.5 * pi);
  return dev >= lo && dev <= hi;
}

}  // namespace sfl
