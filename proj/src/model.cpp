#include "sfl/model.hpp"

#include <cmath>

namespace sfl {

namespace {

// Wraps phi_hat into (-pi, pi].
double wrap_pm_pi(double a) {
  double w = std::remainder(a, two_pi);
  return w;
}

}  // namespace

PatternEval eval_pattern(const SourceConfig& cfg, double phi, double t) {
  PatternEval pe;
  if (t < cfg.switch_on_time) return pe;
  const double w = cfg.omega;
  const double W = cfg.capital_omega;
  const double cb = std::cos(W * t);
  const double sb = std::sin(W * t);

  if (cfg.pattern == AzimuthalPattern::harmonic) {
    const double m = static_cast<double>(cfg.m);
    const double a = m * (phi - w * t);
    const double ca = std::cos(a), sa = std::sin(a);
    pe.f = ca * cb;
    pe.f_t = m * w * sa * cb - W * ca * sb;
    pe.f_phi = -m * sa * cb;
    pe.f_tt = -(m * w * m * w + W * W) * ca * cb - 2.0 * m * w * W * sa * sb;
    pe.f_tphi = m * w * m * ca * cb + m * W * sa * sb;
    return pe;
  }

  // Compact co-rotating bump g(phi_hat) = exp(-phi_hat^2 / (2 sigma^2)).
  const double s2 = cfg.bump_sigma * cfg.bump_sigma;
  const double ph = wrap_pm_pi(phi - w * t);
  if (std::abs(ph) > 6.0697 * cfg.bump_sigma) return pe;
  const double g = std::exp(-0.5 * ph * ph / s2);
  const double g1 = -ph / s2 * g;               // g'
  const double g2 = (ph * ph / s2 - 1.0) / s2 * g;  // g''
  pe.f = g * cb;
  pe.f_t = -w * g1 * cb - W * g * sb;
  pe.f_phi = g1 * cb;
  pe.f_tt = w * w * g2 * cb + 2.0 * w * W * g1 * sb - W * W * g * cb;
  pe.f_tphi = -w * g2 * cb - W * g1 * sb;
  return pe;
}

ProfileEval eval_profile(const SourceConfig& cfg, double r, double z) {
  ProfileEval pv;
  if (r < cfg.r_l || r > cfg.r_u || z < cfg.z_min || z > cfg.z_max) return pv;
  const double fr = cfg.radial.value(r);
  const double fz = cfg.axial.value(z);
  pv.s = cfg.amplitude * (fr * fz);

  double dfr, dfz;
  if (cfg.radial.family == ProfileFamily::gaussian && cfg.axial.family == ProfileFamily::gaussian) {
    dfr = cfg.radial.derivative(r);
    dfz = cfg.axial.derivative(z);
  } else {
    // weak derivatives across top-hat edges
    const double h = cfg.h_div();
    auto clipped_r = [&](double u) {
      return (u < cfg.r_l || u > cfg.r_u) ? 0.0 : cfg.radial.value(u);
    };
    auto clipped_z = [&](double u) {
      return (u < cfg.z_min || u > cfg.z_max) ? 0.0 : cfg.axial.value(u);
    };
    dfr = cfg.radial.family == ProfileFamily::gaussian
              ? cfg.radial.derivative(r)
              : (clipped_r(r + h) - clipped_r(r - h)) / (2.0 * h);
    dfz = cfg.axial.family == ProfileFamily::gaussian
              ? cfg.axial.derivative(z)
              : (clipped_z(z + h) - clipped_z(z - h)) / (2.0 * h);
  }
  pv.ds_dr = cfg.amplitude * (dfr * fz);
  pv.ds_dz = cfg.amplitude * (fr * dfz);
  return pv;
}

Vec3 polarization(const SourceConfig& cfg, const SpacetimePoint& p) {
  const Cylindrical c = to_cylindrical(p.pos);
  const ProfileEval pv = eval_profile(cfg, c.r, c.z);
  const PatternEval pe = eval_pattern(cfg, c.phi, p.t);
  return pv.s * pe.f;
}

Vec3 polarization_current(const SourceConfig& cfg, const SpacetimePoint& p) {
  const Cylindrical c = to_cylindrical(p.pos);
  const ProfileEval pv = eval_profile(cfg, c.r, c.z);
  const PatternEval pe = eval_pattern(cfg, c.phi, p.t);
  return pv.s * pe.f_t;
}

double bound_charge_density(const SourceConfig& cfg, const SpacetimePoint& p) {
  // rho = -div P with
  // div P = (1/r) d(r P_r)/dr + (1/r) dP_phi/dphi + dP_z/dz
  const Cylindrical c = to_cylindrical(p.pos);
  if (c.r <= 0.0) return 0.0;
  const ProfileEval pv = eval_profile(cfg, c.r, c.z);
  const PatternEval pe = eval_pattern(cfg, c.phi, p.t);
  const double radial_div = (pv.ds_dr.x + pv.s.x / c.r + pv.ds_dz.z) * pe.f;
  const double azimuthal_div = pv.s.y / c.r * pe.f_phi;
  return -(radial_div + azimuthal_div);
}

Vec3 curl_current(const SourceConfig& cfg, const SpacetimePoint& p) {
  // j = s(r,z) f_t(phi,t); cylindrical curl:
  //   (curl j)_r   = (1/r) dj_z/dphi - dj_phi/dz
  //   (curl j)_phi = dj_r/dz - dj_z/dr
  //   (curl j)_z   = (1/r) d(r j_phi)/dr - (1/r) dj_r/dphi
  const Cylindrical c = to_cylindrical(p.pos);
  if (c.r <= 0.0) return {};
  const ProfileEval pv = eval_profile(cfg, c.r, c.z);
  const PatternEval pe = eval_pattern(cfg, c.phi, p.t);
  const double T = pe.f_t;
  const double U = pe.f_tphi;
  return {pv.s.z / c.r * U - pv.ds_dz.y * T,
          pv.ds_dz.x * T - pv.ds_dr.z * T,
          (pv.s.y / c.r + pv.ds_dr.y) * T - pv.s.x / c.r * U};
}

DiscreteSource machine_to_source(const MachineConfig& mc) {
  if (mc.delta_t <= 0.0) throw InvariantError("machine_to_source: delta_t must be positive");
  const double v = mc.pattern_speed();
  const double omega_eff = v / mc.arc_radius;           // rad/s
  const double length_scale = omega_eff / kSpeedOfLightSI;  // 1/m

  DiscreteSource ds;
  ds.v_over_c = v / kSpeedOfLightSI;
  ds.m_omega = mc.m_omega / omega_eff;
  ds.capital_omega = mc.capital_omega / omega_eff;

  const double r = mc.arc_radius * length_scale;  // = v/c by construction
  const double pitch_phi = mc.electrode_pitch / mc.arc_radius;
  const double half = 0.5 * (mc.n_electrodes - 1);
  ds.cells.reserve(mc.n_electrodes);
  for (int j = 0; j < mc.n_electrodes; ++j) {
    DiscreteSource::Cell cell;
    cell.r = r;
    cell.phi = wrap_angle((j - half) * pitch_phi);
    cell.z = 0.0;
    cell.dr = mc.dielectric_width * length_scale;
    cell.arc = mc.electrode_width * length_scale;
    cell.dz = mc.dielectric_thickness * length_scale;
    cell.amplitude = mc.v0;
    cell.phase_delay = j * mc.delta_t * omega_eff;
    ds.cells.push_back(cell);
  }
  return ds;
}

}  // namespace sfl
