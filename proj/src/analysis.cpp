#include "sfl/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "sfl/kinematics.hpp"
#include "sfl/reduce.hpp"

namespace sfl {

namespace {

struct Ols {
  double slope, intercept, r_squared, slope_se, intercept_se;
};

Ols ols(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Ols o;
  o.slope = sxy / sxx;
  o.intercept = my - o.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (o.intercept + o.slope * x[i]);
    ss_res += r * r;
  }
  o.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
  const double s2 = n > 2 ? ss_res / (n - 2) : 0.0;
  o.slope_se = std::sqrt(s2 / sxx);
  o.intercept_se = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  return o;
}

}  // namespace

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw InvariantError("fit_power_law: need at least 3 rows");
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0)
      throw InvariantError("fit_power_law: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const Ols o = ols(lx, ly);
  PowerLawFit f;
  f.n = -o.slope;  // S ~ R^{-n}
  f.intercept = o.intercept;
  f.r_squared = o.r_squared;
  f.i_begin = 0;
  f.i_end = static_cast<int>(x.size());
  return f;
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw InvariantError("fit_linear: need at least 3 rows");
  const Ols o = ols(x, y);
  return {o.slope, o.intercept, o.r_squared, o.slope_se, o.intercept_se};
}

// ---------------------------------------------------------------------------
// Intensity

Intensity intensity(std::span<const FieldSample> series) {
  if (series.size() < 64)
    throw InvariantError("intensity: series must contain at least 64 samples over one period");
  Accum poynting;
  double peak_b2 = 0.0;
  double err = 0.0;
  for (const FieldSample& s : series) {
    poynting.add(s.E.cross(s.B).norm());
    peak_b2 = std::max(peak_b2, s.B.norm2());
    err = std::max(err, s.err_est);
  }
  return {poynting.value() / static_cast<double>(series.size()), peak_b2, err};
}

namespace {

double modulation_period(const SourceConfig& cfg) {
  if (cfg.capital_omega > 0.0) return two_pi / cfg.capital_omega;
  if (cfg.pattern == AzimuthalPattern::harmonic) return two_pi / (cfg.m * cfg.omega);
  return two_pi / cfg.omega;
}

double steady_start_time(const SourceConfig& cfg, double R_P) {
  const double reach =
      std::sqrt(cfg.r_u * cfg.r_u +
                std::max(cfg.z_min * cfg.z_min, cfg.z_max * cfg.z_max));
  return R_P + reach + 3.0 * modulation_period(cfg);
}

}  // namespace

Intensity intensity_at(const SourceConfig& cfg, double theta, double phi, double R_P,
                       const QuadratureSpec& q, const IntensityOptions& opts) {
  const int n = std::max(64, opts.samples);
  const double T = modulation_period(cfg);
  const double t0 = steady_start_time(cfg, R_P);
  const Vec3 pos = to_cartesian(Spherical{R_P, theta, phi});

  std::vector<double> times(n);
  for (int k = 0; k < n; ++k) times[k] = t0 + T * k / n;
  const auto series = field_series(cfg, pos, times, q, {}, opts.richardson ? 1 : 8);
  return intensity(series);
}

// ---------------------------------------------------------------------------
// Scans

namespace {

// Fit-window policy: drop the nearest radius (near-zone contamination) and
// rows flagged by their error estimate.
std::pair<std::vector<double>, std::vector<double>> fit_rows(const std::vector<ScanRow>& rows,
                                                             bool drop_first, int* i_begin) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (drop_first && i == 0) continue;
    if (rows[i].flagged) continue;
    x.push_back(rows[i].abscissa);
    y.push_back(rows[i].value);
  }
  if (i_begin) *i_begin = drop_first ? 1 : 0;
  return {x, y};
}

}  // namespace

ScanResult decay_scan(const SourceConfig& cfg, double theta, double phi,
                      std::span<const double> radii, const QuadratureSpec& q,
                      const IntensityOptions& opts) {
  if (radii.size() < 3) throw InvariantError("decay_scan: need at least 3 radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1]) throw InvariantError("decay_scan: radii must ascend");

  ScanResult res;
  for (double R : radii) {
    const Intensity I = intensity_at(cfg, theta, phi, R, q, opts);
    ScanRow row;
    row.abscissa = R;
    row.value = I.mean_poynting;
    row.alt_value = I.peak_b2;
    row.err_est = I.err_est;
    row.flagged = I.err_est > 0.10;
    res.rows.push_back(row);
  }
  int i_begin = 0;
  auto [x, y] = fit_rows(res.rows, /*drop_first=*/true, &i_begin);
  res.fit = fit_power_law(x, y);
  res.fit.i_begin = i_begin;
  res.fit.i_end = static_cast<int>(res.rows.size());
  return res;
}

ScanResult ratio_experiment(const SourceConfig& cfg_super, const SourceConfig& cfg_sub,
                            double theta, double phi, std::span<const double> radii,
                            const QuadratureSpec& q, const IntensityOptions& opts) {
  if (radii.size() < 3) throw InvariantError("ratio_experiment: need at least 3 radii");
  ScanResult res;
  for (double R : radii) {
    const Intensity a = intensity_at(cfg_super, theta, phi, R, q, opts);
    const Intensity b = intensity_at(cfg_sub, theta, phi, R, q, opts);
    ScanRow row;
    row.abscissa = R;
    row.value = a.mean_poynting / b.mean_poynting;
    row.alt_value = a.peak_b2 / b.peak_b2;
    row.err_est = a.err_est + b.err_est;
    row.flagged = row.err_est > 0.10;
    res.rows.push_back(row);
  }
  std::vector<double> x, y;
  for (const auto& r : res.rows)
    if (!r.flagged) {
      x.push_back(r.abscissa);
      y.push_back(r.value);
    }
  res.linear_fit = fit_linear(x, y);
  // power-law view of the same rows (ratio ~ R^{+1} for the paper's pair)
  res.fit = fit_power_law(x, y);
  return res;
}

namespace {

double auto_window(const SourceConfig& cfg, double R_P) {
  const double r_c = 0.5 * (cfg.r_l + cfg.r_u);
  const double s = std::min(1.0, 1.0 / (r_c * cfg.omega));
  const double theta_c = std::asin(s);
  const double geo = (cfg.z_max - cfg.z_min) / (R_P * std::max(0.2, std::sin(theta_c)));
  return 1.6 * geo;
}

double cusp_theta(const SourceConfig& cfg) {
  const double r_c = 0.5 * (cfg.r_l + cfg.r_u);
  if (r_c * cfg.omega >= 1.0) return std::asin(1.0 / (r_c * cfg.omega));
  return 0.5 * pi;
}

}  // namespace

SubbeamWidth subbeam_width(const SourceConfig& cfg, double R_P, double phi_P,
                           const QuadratureSpec& q, const SubbeamOptions& opts) {
  const int n = std::max(41, opts.n_theta);
  const double theta_c = cusp_theta(cfg);
  const double hw = opts.window_halfwidth > 0.0 ? opts.window_halfwidth : auto_window(cfg, R_P);

  SubbeamWidth sw;
  sw.profile.resize(n);
  for (int i = 0; i < n; ++i) {
    const double theta = theta_c - hw + 2.0 * hw * i / (n - 1);
    const Intensity I = intensity_at(cfg, theta, phi_P, R_P, q, opts.intensity);
    sw.profile[i] = {theta, I.mean_poynting, I.peak_b2, I.err_est, I.err_est > 0.10};
  }

  int ipk = 0;
  for (int i = 1; i < n; ++i)
    if (sw.profile[i].value > sw.profile[ipk].value) ipk = i;
  if (ipk == 0 || ipk == n - 1)
    throw Error("subbeam_width: intensity peak sits on the scan-window edge");
  const double half = 0.5 * sw.profile[ipk].value;
  sw.theta_peak = sw.profile[ipk].abscissa;

  auto cross = [&](int dir) -> double {
    for (int i = ipk; i + dir >= 0 && i + dir < n; i += dir) {
      const double v0 = sw.profile[i].value, v1 = sw.profile[i + dir].value;
      if (v1 <= half) {
        const double t = (v0 - half) / (v0 - v1);
        return sw.profile[i].abscissa + t * (sw.profile[i + dir].abscissa - sw.profile[i].abscissa);
      }
    }
    throw Error("subbeam_width: no half-maximum crossing within the scan window");
  };
  const double lo = cross(-1);
  const double hi = cross(+1);
  sw.delta_theta = hi - lo;
  return sw;
}

GradientScan gradient_scan(const SourceConfig& cfg, std::span<const double> radii,
                           const QuadratureSpec& q, const GradientScanOptions& opts) {
  if (radii.size() < 3) throw InvariantError("gradient_scan: need at least 3 radii");
  GradientScan gs;
  const double theta_c = opts.theta_center >= 0.0 ? opts.theta_center : cusp_theta(cfg);
  const double T = [&] {
    if (cfg.capital_omega > 0.0) return two_pi / cfg.capital_omega;
    if (cfg.pattern == AzimuthalPattern::harmonic) return two_pi / (cfg.m * cfg.omega);
    return two_pi / cfg.omega;
  }();

  for (double R : radii) {
    const double hw = opts.window_halfwidth > 0.0 ? opts.window_halfwidth : auto_window(cfg, R);
    const int n = std::max(11, opts.n_theta);
    const double t0 = steady_start_time(cfg, R);

    // B snapshots over (theta, t); all consume the B-only 6-point stencil.
    std::vector<Vec3> b(static_cast<std::size_t>(n) * opts.n_time);
    std::vector<double> berr(b.size());
    parallel_for(b.size(), [&](std::size_t idx) {
      const int i = static_cast<int>(idx) / opts.n_time;
      const int k = static_cast<int>(idx) % opts.n_time;
      const double theta = theta_c - hw + 2.0 * hw * i / (n - 1);
      const Vec3 pos = to_cartesian(Spherical{R, theta, 0.0});
      const double t = t0 + T * k / opts.n_time;
      const double h = FdPolicy{}.spatial_step(R);
      const Vec3 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
      std::vector<SpacetimeOffset> offs;
      for (int a = 0; a < 3; ++a) {
        offs.push_back({e[a] * h, 0});
        offs.push_back({e[a] * -h, 0});
      }
      const auto rr = retarded_potential_multi(cfg, {pos, t}, offs, q);
      const double i2h = 1.0 / (2.0 * h);
      Vec3 d1[3];
      for (int a = 0; a < 3; ++a) d1[a] = (rr[2 * a].A - rr[2 * a + 1].A) * i2h;
      b[idx] = {d1[1].z - d1[2].y, d1[2].x - d1[0].z, d1[0].y - d1[1].x};
      berr[idx] = rr[0].err_est;
    });

    const double dtheta = 2.0 * hw / (n - 1);
    double max_angular = 0.0;
    double max_db = 0.0, max_b = 0.0, max_err = 0.0;
    for (int k = 0; k < opts.n_time; ++k) {
      for (int i = 0; i + 1 < n; ++i) {
        const Vec3 diff = b[(i + 1) * opts.n_time + k] - b[i * opts.n_time + k];
        const double g = diff.norm() / dtheta;
        max_angular = std::max(max_angular, g);
        max_db = std::max(max_db, diff.norm());
      }
      for (int i = 0; i < n; ++i) {
        max_b = std::max(max_b, b[i * opts.n_time + k].norm());
        max_err = std::max(max_err, berr[i * opts.n_time + k]);
      }
    }
    ScanRow row;
    row.abscissa = R;
    row.value = max_angular / R;  // spatial transverse gradient
    row.alt_value = max_angular;
    row.err_est = max_err;
    // FD noise: quadrature error on B relative to the measured differences
    if (max_db > 0.0 && max_err * max_b / max_db > 0.2) gs.noisy = true;
    row.flagged = row.err_est > 0.10;
    gs.rows.push_back(row);
  }

  std::vector<double> x, y, ya;
  for (std::size_t i = 1; i < gs.rows.size(); ++i) {  // drop the nearest radius
    if (gs.rows[i].flagged) continue;
    x.push_back(gs.rows[i].abscissa);
    y.push_back(gs.rows[i].value);
    ya.push_back(gs.rows[i].alt_value);
  }
  gs.fit_spatial = fit_power_law(x, y);
  gs.fit_angular = fit_power_law(x, ya);
  gs.growth_exponent = -gs.fit_spatial.n;
  return gs;
}

std::vector<PolarizationSample> polarization_sweep(const SourceConfig& cfg, double theta_P,
                                                   std::span<const double> phis, double t_P,
                                                   const QuadratureSpec& q) {
  // R_P fixed well into the wave zone of the compact element.
  const double R_P = 50.0;
  std::vector<PolarizationSample> out(phis.size());
  parallel_for(phis.size(), [&](std::size_t i) {
    const SpacetimePoint P = SpacetimePoint::from_spherical(R_P, theta_P, phis[i], t_P);
    const FieldSample s = field_from_potential(cfg, P, q);
    PolarizationSample ps;
    ps.phi_P = phis[i];
    // position angle of E projected onto the orbital plane, mod pi
    double a = std::atan2(s.E.y, s.E.x);
    if (a < 0.0) a += pi;
    if (a >= pi) a -= pi;
    ps.angle = a;
    ps.field_mag = s.B.norm();
    out[i] = ps;
  });
  double max_mag = 0.0;
  for (const auto& s : out) max_mag = std::max(max_mag, s.field_mag);
  for (auto& s : out) s.flagged = s.field_mag < 1e-3 * max_mag;
  return out;
}

}  // namespace sfl
