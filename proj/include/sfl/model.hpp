#pragma once

#include "sfl/config.hpp"
#include "sfl/geometry.hpp"

// Polarization model. The polarization is
//   P_{r,phi,z}(r,phi,z,t) = s_{r,phi,z}(r,z) * g(phi - omega t) * cos(capital_omega t)
// with g = cos(m .) for the harmonic pattern or a narrow gaussian bump for
// the compact-element pattern. All operations are total: they return zero
// outside the support and for t < switch-on.

namespace sfl {

// Azimuthal pattern factor and the derivatives needed by the field kernels,
// evaluated at lab azimuth phi and time t.
struct PatternEval {
  double f = 0.0;       // g(phi_hat) cos(Omega t)
  double f_t = 0.0;     // d/dt
  double f_phi = 0.0;   // d/dphi
  double f_tt = 0.0;    // d2/dt2
  double f_tphi = 0.0;  // d2/(dt dphi)
};

PatternEval eval_pattern(const SourceConfig& cfg, double phi, double t);

// Separable amplitude profile s(r,z) and its spatial derivatives.
// Top-hat derivatives are taken in the weak sense by centered differences
// with step cfg.h_div().
struct ProfileEval {
  Vec3 s;      // (s_r, s_phi, s_z)
  Vec3 ds_dr;
  Vec3 ds_dz;
};

ProfileEval eval_profile(const SourceConfig& cfg, double r, double z);

// Model operations (cylindrical components at p's azimuth).
Vec3 polarization(const SourceConfig& cfg, const SpacetimePoint& p);
Vec3 polarization_current(const SourceConfig& cfg, const SpacetimePoint& p);
double bound_charge_density(const SourceConfig& cfg, const SpacetimePoint& p);
Vec3 curl_current(const SourceConfig& cfg, const SpacetimePoint& p);

// Maps the electrode-array machine to a discrete radiator set and reports
// v/c = pitch / (delta_t c). Throws InvariantError for delta_t <= 0.
DiscreteSource machine_to_source(const MachineConfig& mc);

}  // namespace sfl
