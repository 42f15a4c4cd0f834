#pragma once

#include <span>
#include <vector>

#include "sfl/solver.hpp"

// Quantitative phenomenology: decay-exponent fits, the superluminal /
// subluminal intensity-ratio experiment, subbeam width and field-gradient
// scaling, and polarization-angle sweeps.

namespace sfl {

struct ScanRow {
  double abscissa = 0.0;  // R_P or angle
  double value = 0.0;
  double alt_value = 0.0;  // peak |B|^2 alternative metric where applicable
  double err_est = 0.0;    // relative
  bool flagged = false;    // err_est > 10%
};

struct PowerLawFit {
  double n = 0.0;          // S ~ R^{-n}
  double intercept = 0.0;  // log-log intercept
  double r_squared = 0.0;
  int i_begin = 0, i_end = 0;  // fit window [i_begin, i_end)
};

struct LinearFit {
  double slope = 0.0, intercept = 0.0;
  double r_squared = 0.0;
  double slope_se = 0.0, intercept_se = 0.0;
};

// OLS on (log R, log S); rejects non-positive values and fewer than 3 rows.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

struct IntensityOptions {
  int samples = 64;       // per period, >= 64 enforced when a series is reduced
  bool richardson = false;  // step-halved FD stencil (dearer, tighter err_est)
};

// Period-mean |E x B| of a sampled series covering one full period.
// Throws InvariantError when under-sampled. Also reports peak |B|^2.
struct Intensity {
  double mean_poynting = 0.0;
  double peak_b2 = 0.0;
  double err_est = 0.0;
};
Intensity intensity(std::span<const FieldSample> series);

// Samples one modulation period at direction (theta, phi), radius R_P,
// starting after the switch-on transient has cleared.
Intensity intensity_at(const SourceConfig& cfg, double theta, double phi, double R_P,
                       const QuadratureSpec& q, const IntensityOptions& opts = {});

struct ScanResult {
  std::vector<ScanRow> rows;
  PowerLawFit fit;       // on rows marked usable
  LinearFit linear_fit;  // only for the ratio experiment
};

// Intensity vs radius along a fixed direction, log-log power-law fit.
// The nearest radius and rows with err_est > 10% are excluded from the
// fit window (near-zone contamination).
ScanResult decay_scan(const SourceConfig& cfg, double theta, double phi,
                      std::span<const double> radii, const QuadratureSpec& q,
                      const IntensityOptions& opts = {});

// I_super / I_sub along a path, with a linear (not log) fit vs R_P.
ScanResult ratio_experiment(const SourceConfig& cfg_super, const SourceConfig& cfg_sub,
                            double theta, double phi, std::span<const double> radii,
                            const QuadratureSpec& q, const IntensityOptions& opts = {});

struct SubbeamWidth {
  double delta_theta = 0.0;  // FWHM of the intensity peak across the cusp cone
  double theta_peak = 0.0;
  std::vector<ScanRow> profile;  // theta vs intensity
};

struct SubbeamOptions {
  int n_theta = 41;
  double window_halfwidth = 0.0;  // rad; 0 = auto from source z-extent and R_P
  IntensityOptions intensity;
};

// FWHM of peak intensity across the cusp cone at radius R_P. Throws
// Error when no interior peak is bracketed by half-maximum crossings.
SubbeamWidth subbeam_width(const SourceConfig& cfg, double R_P, double phi_P,
                           const QuadratureSpec& q, const SubbeamOptions& opts = {});

struct GradientScanOptions {
  int n_theta = 41;
  int n_time = 8;
  double window_halfwidth = 0.0;  // 0 = auto
  double theta_center = -1.0;     // <0 = cusp cone (superluminal) or pi/2
};

// Max transverse field gradient over a theta scan, vs radius. Rows carry
// the spatial gradient max |dB/dtheta| / R_P; fit exponent is reported in
// the growth convention (positive = grows with distance).
struct GradientScan {
  std::vector<ScanRow> rows;      // value = spatial gradient, alt = angular gradient
  PowerLawFit fit_spatial;        // on spatial gradient (S ~ R^{-n})
  PowerLawFit fit_angular;
  double growth_exponent = 0.0;   // -fit_spatial.n
  bool noisy = false;             // FD noise above 20% of signal somewhere
};
GradientScan gradient_scan(const SourceConfig& cfg, std::span<const double> radii,
                           const QuadratureSpec& q, const GradientScanOptions& opts = {});

struct PolarizationSample {
  double phi_P = 0.0;
  double angle = 0.0;      // position angle of E projected on the orbital plane, mod pi
  double field_mag = 0.0;  // |B|
  bool flagged = false;    // below noise floor
};

// Position angles on the cone theta_P for a compact source element.
std::vector<PolarizationSample> polarization_sweep(const SourceConfig& cfg, double theta_P,
                                                   std::span<const double> phis, double t_P,
                                                   const QuadratureSpec& q);

}  // namespace sfl
