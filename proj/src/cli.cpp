#include "sfl/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "sfl/analysis.hpp"
#include "sfl/csv.hpp"
#include "sfl/kinematics.hpp"
#include "sfl/kirchhoff.hpp"
#include "sfl/model.hpp"
#include "sfl/reduce.hpp"

namespace sfl {

namespace {

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  bool strict = false;
  int jobs = 0;
  std::vector<int> grid;  // n_r, n_phi, n_z
  int refine = -1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("-c,--config", c.config_path, "config file path");
  cmd->add_option("--preset", c.preset, "named preset (see dump-config --list)");
  cmd->add_option("--out", c.out_dir, "output directory (default $SFL_OUT_DIR or .)");
  cmd->add_flag("--strict", c.strict, "elevate computation warnings to exit code 1");
  cmd->add_option("--jobs", c.jobs, "worker threads (results are jobs-independent)");
  cmd->add_option("--grid", c.grid, "quadrature base grid n_r,n_phi,n_z")->delimiter(',');
  cmd->add_option("--refine", c.refine, "max refinement levels");
}

LoadedConfig load_from(const CommonOpts& c) {
  if (!c.preset.empty()) return load_config("preset:" + c.preset);
  if (!c.config_path.empty()) return load_config(c.config_path);
  throw ParseError("no config given: use -c FILE or --preset NAME");
}

QuadratureSpec quad_from(const LoadedConfig& lc, const CommonOpts& c) {
  QuadratureSpec q;
  q.n_r = lc.run.n_r;
  q.n_phi = lc.run.n_phi;
  q.n_z = lc.run.n_z;
  q.max_refine = lc.run.refine;
  q.phase_tol = lc.run.phase_tol;
  q.filament_boost = lc.run.filament_boost;
  q.filament_halfwidth = lc.run.filament_halfwidth;
  if (c.grid.size() == 3) {
    q.n_r = c.grid[0];
    q.n_phi = c.grid[1];
    q.n_z = c.grid[2];
  }
  if (c.refine >= 0) q.max_refine = c.refine;
  q.validate();
  return q;
}

std::filesystem::path out_dir_of(const CommonOpts& c) {
  std::string dir = c.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("SFL_OUT_DIR");
    dir = env && *env ? env : ".";
  }
  std::filesystem::create_directories(dir);
  return dir;
}

void apply_jobs(const LoadedConfig& lc, const CommonOpts& c) {
  set_max_jobs(c.jobs > 0 ? c.jobs : lc.run.jobs);
}

double modulation_period(const SourceConfig& cfg) {
  if (cfg.capital_omega > 0.0) return two_pi / cfg.capital_omega;
  if (cfg.pattern == AzimuthalPattern::harmonic) return two_pi / (cfg.m * cfg.omega);
  return two_pi / cfg.omega;
}

// Observation time with all switch-on transients cleared at distance d.
double steady_time(const SourceConfig& cfg, double max_distance) {
  const double reach = std::sqrt(cfg.r_u * cfg.r_u +
                                 std::max(cfg.z_min * cfg.z_min, cfg.z_max * cfg.z_max));
  return max_distance + reach + 3.0 * modulation_period(cfg);
}

// Direction keyword: "cusp", "offbeam" or "theta,phi" in radians.
std::pair<double, double> resolve_direction(const SourceConfig& cfg, const std::string& dir) {
  const double r_c = 0.5 * (cfg.r_l + cfg.r_u);
  if (dir == "cusp") {
    const double theta = cusp_cone_angle(r_c * cfg.omega);
    return {theta, 0.0};
  }
  if (dir == "offbeam") {
    // just below the low-theta edge of the beam interval
    const double dev_hi = std::acos(1.0 / (cfg.r_l * cfg.omega));
    const double theta = 0.5 * pi - dev_hi - 0.11;
    return {std::max(0.15, theta), 0.0};
  }
  const auto comma = dir.find(',');
  if (comma == std::string::npos)
    throw ParseError("--dir expects 'cusp', 'offbeam' or 'theta,phi'");
  return {std::stod(dir.substr(0, comma)), std::stod(dir.substr(comma + 1))};
}

struct Emitter {
  std::filesystem::path dir;
  std::string resolved;
  std::string subcommand;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  int warnings = 0;

  void write(const std::string& stem, const CsvWriter& csv, Manifest& mf) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    mf.set("tool_version", kVersion);
    mf.set("warnings", static_cast<double>(warnings));
    mf.set("wall_clock_s", secs);
    csv.write_file((dir / (stem + ".csv")).string());
    mf.write_file((dir / (stem + ".manifest.txt")).string());
  }
};

const char* region_name(EnvelopeRegion r) {
  switch (r) {
    case EnvelopeRegion::inside_envelope: return "inside_envelope";
    case EnvelopeRegion::near_cusp: return "near_cusp";
    default: return "outside_envelope";
  }
}

// ---------------------------------------------------------------------------

int cmd_validate(const CommonOpts& c) {
  load_from(c);  // throws on problems
  return 0;
}

int cmd_dump_config(const CommonOpts& c, bool list) {
  if (list) {
    for (const auto& n : preset_names()) std::cout << n << "\n";
    return 0;
  }
  const LoadedConfig lc = load_from(c);
  std::cout << lc.resolved_dump();
  if (lc.machine) {
    const DiscreteSource ds = machine_to_source(*lc.machine);
    std::cout << "[machine.discrete_source]\n" << ds.dump();
  }
  return 0;
}

int cmd_envelope(const CommonOpts& c, double t_P, const std::string& plane, int rays,
                 double max_radius) {
  const LoadedConfig lc = load_from(c);
  apply_jobs(lc, c);
  const SourceConfig& cfg = lc.require_source();
  Orbit orb;
  orb.radius = 0.5 * (cfg.r_l + cfg.r_u);
  orb.omega = cfg.omega;
  if (t_P <= 0.0) t_P = steady_time(cfg, max_radius);

  Emitter em{out_dir_of(c), lc.resolved_dump(), "envelope"};
  const auto samples = envelope_section(orb, t_P, plane, rays, max_radius);
  CsvWriter csv({"x", "y", "z", "t_P", "region", "n_roots"});
  for (const auto& s : samples)
    csv.add_row_mixed({format_double(s.pos.x), format_double(s.pos.y), format_double(s.pos.z),
                       format_double(t_P), region_name(s.region), std::to_string(s.n_roots)});
  Manifest mf("envelope", em.resolved);
  mf.set("plane", plane);
  mf.set("rays", static_cast<double>(rays));
  mf.set("max_radius", max_radius);
  mf.set("orbit_radius", orb.radius);
  em.write("envelope", csv, mf);
  return c.strict && em.warnings ? 1 : 0;
}

int cmd_field(const CommonOpts& c, const std::vector<double>& at) {
  if (at.size() != 4) throw ParseError("--at expects R,theta,phi,t");
  const LoadedConfig lc = load_from(c);
  apply_jobs(lc, c);
  const SourceConfig& cfg = lc.require_source();
  const QuadratureSpec q = quad_from(lc, c);
  const SpacetimePoint P = SpacetimePoint::from_spherical(at[0], at[1], at[2], at[3]);

  Emitter em{out_dir_of(c), lc.resolved_dump(), "field"};
  const FieldSample s = field_from_potential(cfg, P, q);
  if (s.warn) ++em.warnings;
  CsvWriter csv({"R_P", "theta", "phi", "t_P", "A0", "Ax", "Ay", "Az", "Ex", "Ey", "Ez", "Bx",
                 "By", "Bz", "err_est", "near_cusp"});
  csv.add_row({at[0], at[1], at[2], at[3], s.A0, s.A.x, s.A.y, s.A.z, s.E.x, s.E.y, s.E.z, s.B.x,
               s.B.y, s.B.z, s.err_est, s.near_cusp ? 1.0 : 0.0});
  Manifest mf("field", em.resolved);
  mf.set("err_quad", s.err_quad);
  mf.set("err_fd", s.err_fd);
  mf.set("config_hash", static_cast<double>(s.config_hash));
  em.write("field", csv, mf);
  return c.strict && em.warnings ? 1 : 0;
}

int cmd_scan_decay(const CommonOpts& c, std::vector<double> radii, const std::string& dir) {
  const LoadedConfig lc = load_from(c);
  apply_jobs(lc, c);
  const SourceConfig& cfg = lc.require_source();
  const QuadratureSpec q = quad_from(lc, c);
  const auto [theta, phi] = resolve_direction(cfg, dir);

  Emitter em{out_dir_of(c), lc.resolved_dump(), "scan-decay"};
  const ScanResult res = decay_scan(cfg, theta, phi, radii, q);
  CsvWriter csv({"R_P", "intensity", "peak_B2", "err_est", "flagged"});
  for (const auto& r : res.rows) {
    csv.add_row({r.abscissa, r.value, r.alt_value, r.err_est, r.flagged ? 1.0 : 0.0});
    if (r.flagged) ++em.warnings;
  }
  Manifest mf("scan-decay", em.resolved);
  mf.set("direction_theta", theta);
  mf.set("direction_phi", phi);
  mf.set("fit_n", res.fit.n);
  mf.set("fit_r_squared", res.fit.r_squared);
  mf.set("fit_window_begin", static_cast<double>(res.fit.i_begin));
  mf.set("flag_threshold_err", 0.10);
  em.write("decay", csv, mf);
  return c.strict && em.warnings ? 1 : 0;
}

int cmd_scan_ratio(const CommonOpts& c, const std::string& sub_config,
                   std::vector<double> radii, const std::string& dir) {
  const LoadedConfig lc = load_from(c);
  const LoadedConfig lc_sub = load_config(sub_config);
  apply_jobs(lc, c);
  const SourceConfig& cfg_super = lc.require_source();
  const SourceConfig& cfg_sub = lc_sub.require_source();
  const QuadratureSpec q = quad_from(lc, c);
  const auto [theta, phi] = resolve_direction(cfg_super, dir);

  Emitter em{out_dir_of(c), lc.resolved_dump(), "scan-ratio"};
  const ScanResult res = ratio_experiment(cfg_super, cfg_sub, theta, phi, radii, q);
  CsvWriter csv({"R_P", "ratio", "ratio_peak_B2", "err_est", "flagged"});
  for (const auto& r : res.rows) {
    csv.add_row({r.abscissa, r.value, r.alt_value, r.err_est, r.flagged ? 1.0 : 0.0});
    if (r.flagged) ++em.warnings;
  }
  Manifest mf("scan-ratio", em.resolved);
  mf.set("sub_config", sub_config);
  mf.set("direction_theta", theta);
  mf.set("fit_slope", res.linear_fit.slope);
  mf.set("fit_intercept", res.linear_fit.intercept);
  mf.set("fit_intercept_se", res.linear_fit.intercept_se);
  mf.set("fit_r_squared", res.linear_fit.r_squared);
  em.write("ratio", csv, mf);
  return c.strict && em.warnings ? 1 : 0;
}

int cmd_scan_width(const CommonOpts& c, std::vector<double> radii) {
  const LoadedConfig lc = load_from(c);
  apply_jobs(lc, c);
  const SourceConfig& cfg = lc.require_source();
  const QuadratureSpec q = quad_from(lc, c);

  Emitter em{out_dir_of(c), lc.resolved_dump(), "scan-width"};
  CsvWriter csv({"R_P", "delta_theta", "R_times_delta_theta", "theta_peak"});
  Manifest mf("scan-width", em.resolved);
  for (double R : radii) {
    const SubbeamWidth sw = subbeam_width(cfg, R, 0.0, q);
    csv.add_row({R, sw.delta_theta, R * sw.delta_theta, sw.theta_peak});
  }
  em.write("width", csv, mf);
  return c.strict && em.warnings ? 1 : 0;
}

int cmd_scan_gradient(const CommonOpts& c, std::vector<double> radii) {
  const LoadedConfig lc = load_from(c);
  apply_jobs(lc, c);
  const SourceConfig& cfg = lc.require_source();
  const QuadratureSpec q = quad_from(lc, c);

  Emitter em{out_dir_of(c), lc.resolved_dump(), "scan-gradient"};
  const GradientScan gs = gradient_scan(cfg, radii, q);
  if (gs.noisy) ++em.warnings;
  CsvWriter csv({"R_P", "max_grad_spatial", "max_grad_angular", "err_est", "flagged"});
  for (const auto& r : gs.rows)
    csv.add_row({r.abscissa, r.value, r.alt_value, r.err_est, r.flagged ? 1.0 : 0.0});
  Manifest mf("scan-gradient", em.resolved);
  mf.set("growth_exponent_spatial", gs.growth_exponent);
  mf.set("growth_exponent_angular", -gs.fit_angular.n);
  mf.set("fd_noisy", gs.noisy ? 1.0 : 0.0);
  em.write("gradient", csv, mf);
  return c.strict && em.warnings ? 1 : 0;
}

int cmd_polarization_map(const CommonOpts& c, double theta, int n_phi, double t_P) {
  const LoadedConfig lc = load_from(c);
  apply_jobs(lc, c);
  const SourceConfig& cfg = lc.require_source();
  const QuadratureSpec q = quad_from(lc, c);
  if (t_P <= 0.0) t_P = steady_time(cfg, 50.0) + 1.0;

  std::vector<double> phis(n_phi);
  for (int i = 0; i < n_phi; ++i) phis[i] = two_pi * i / n_phi;

  Emitter em{out_dir_of(c), lc.resolved_dump(), "polarization-map"};
  const auto samples = polarization_sweep(cfg, theta, phis, t_P, q);
  CsvWriter csv({"phi_P", "position_angle", "field_mag", "flagged"});
  for (const auto& s : samples) {
    csv.add_row({s.phi_P, s.angle, s.field_mag, s.flagged ? 1.0 : 0.0});
    if (s.flagged) ++em.warnings;
  }
  Manifest mf("polarization-map", em.resolved);
  mf.set("theta_P", theta);
  mf.set("t_P", t_P);
  em.write("polarization", csv, mf);
  return c.strict && em.warnings ? 1 : 0;
}

int cmd_boundary_check(const CommonOpts& c, std::vector<double> rp_list, double rsigma_factor,
                       int mesh_theta, int mesh_phi, int band_factor) {
  const LoadedConfig lc = load_from(c);
  apply_jobs(lc, c);
  const SourceConfig& cfg = lc.require_source();
  const QuadratureSpec q = quad_from(lc, c);
  const double theta = cfg.superluminal()
                           ? cusp_cone_angle(0.5 * (cfg.r_l + cfg.r_u) * cfg.omega)
                           : 0.5 * pi;

  Emitter em{out_dir_of(c), lc.resolved_dump(), "boundary-check"};
  CsvWriter csv({"R_P", "R_sigma", "source_x", "source_y", "source_z", "boundary_x", "boundary_y",
                 "boundary_z", "direct_x", "direct_y", "direct_z", "residual", "ratio",
                 "gap_ratio", "err_est"});
  Manifest mf("boundary-check", em.resolved);
  for (double R_P : rp_list) {
    const double R_sigma = rsigma_factor * R_P;
    const double t_P = steady_time(cfg, R_P + 2.0 * R_sigma);
    const SpacetimePoint P = SpacetimePoint::from_spherical(R_P, theta, 0.0, t_P);
    const TermDecomposition td = identity_check(cfg, P, R_sigma, q, mesh_theta, mesh_phi,
                                                band_factor);
    if (td.err_est > 0.10) ++em.warnings;
    csv.add_row({R_P, R_sigma, td.source.x, td.source.y, td.source.z, td.boundary.x,
                 td.boundary.y, td.boundary.z, td.direct.x, td.direct.y, td.direct.z, td.residual,
                 td.ratio, td.gap_ratio, td.err_est});
  }
  mf.set("mesh_theta", static_cast<double>(mesh_theta));
  mf.set("mesh_phi", static_cast<double>(mesh_phi));
  mf.set("rsigma_factor", rsigma_factor);
  mf.set("direction_theta", theta);
  em.write("boundary", csv, mf);
  return c.strict && em.warnings ? 1 : 0;
}

int cmd_two_sphere(const CommonOpts& c, double r_inner, double r_outer, double r_p,
                   int mesh_theta, int mesh_phi) {
  const LoadedConfig lc = load_from(c);
  apply_jobs(lc, c);
  const SourceConfig& cfg = lc.require_source();
  const QuadratureSpec q = quad_from(lc, c);
  const double t_P = steady_time(cfg, r_p + 2.0 * r_outer);
  const Vec3 x_P = to_cartesian(Spherical{r_p, 0.5 * pi, 0.0});

  Emitter em{out_dir_of(c), lc.resolved_dump(), "two-sphere"};
  SolverFieldProvider provider(cfg, q);
  const TwoSphereResult r =
      two_sphere_composite(provider, {}, r_inner, r_outer, x_P, t_P, mesh_theta, mesh_phi);
  CsvWriter csv({"R_inner", "R_outer", "R_P", "inner_x", "inner_y", "inner_z", "outer_x",
                 "outer_y", "outer_z", "composite_x", "composite_y", "composite_z",
                 "composite_rel"});
  const double scale = std::max(r.inner.norm(), r.outer.norm());
  csv.add_row({r_inner, r_outer, r_p, r.inner.x, r.inner.y, r.inner.z, r.outer.x, r.outer.y,
               r.outer.z, r.composite.x, r.composite.y, r.composite.z,
               scale > 0.0 ? r.composite.norm() / scale : 0.0});
  Manifest mf("two-sphere", em.resolved);
  mf.set("mesh_theta", static_cast<double>(mesh_theta));
  mf.set("mesh_phi", static_cast<double>(mesh_phi));
  mf.set("t_P", t_P);
  em.write("two_sphere", csv, mf);
  return c.strict && em.warnings ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"sfl: retarded fields of rotating polarization-current sources"};
  app.require_subcommand(1);

  CommonOpts copt;

  auto* validate = app.add_subcommand("validate", "parse a config and check its invariants");
  add_common(validate, copt);

  auto* dump = app.add_subcommand("dump-config", "echo the resolved dimensionless config");
  bool dump_list = false;
  dump->add_flag("--list", dump_list, "list preset names");
  add_common(dump, copt);

  auto* envelope = app.add_subcommand("envelope", "classify points against the wavefront envelope");
  double env_tp = -1.0, env_maxr = 8.0;
  std::string env_plane = "xy";
  int env_rays = 24;
  envelope->add_option("--tp", env_tp, "observation time (default: steady state)");
  envelope->add_option("--plane", env_plane, "section plane: xy | xz");
  envelope->add_option("--rays", env_rays, "rays from the rotation axis");
  envelope->add_option("--max-radius", env_maxr, "outer radius of the section");
  add_common(envelope, copt);

  auto* field = app.add_subcommand("field", "potential and fields at one observation event");
  std::vector<double> field_at;
  field->add_option("--at", field_at, "R,theta,phi,t")->delimiter(',');
  add_common(field, copt);

  auto* sdecay = app.add_subcommand("scan-decay", "intensity vs distance with power-law fit");
  std::vector<double> decay_radii{25, 50, 100, 200};
  std::string decay_dir = "cusp";
  sdecay->add_option("--radii", decay_radii, "radii list")->delimiter(',');
  sdecay->add_option("--dir", decay_dir, "direction: cusp | offbeam | theta,phi");
  add_common(sdecay, copt);

  auto* sratio = app.add_subcommand("scan-ratio", "superluminal/subluminal intensity ratio");
  std::vector<double> ratio_radii{50, 80, 120, 160, 200};
  std::string ratio_sub = "preset:ratio-sub-0.875";
  std::string ratio_dir = "cusp";
  sratio->add_option("--radii", ratio_radii, "radii list")->delimiter(',');
  sratio->add_option("--sub", ratio_sub, "subluminal config (file or preset:NAME)");
  sratio->add_option("--dir", ratio_dir, "direction (resolved on the superluminal config)");
  add_common(sratio, copt);

  auto* swidth = app.add_subcommand("scan-width", "subbeam FWHM across the cusp cone");
  std::vector<double> width_radii{50, 100, 200};
  swidth->add_option("--radii", width_radii, "radii list")->delimiter(',');
  add_common(swidth, copt);

  auto* sgrad = app.add_subcommand("scan-gradient", "max field gradient vs distance");
  std::vector<double> grad_radii{25, 50, 100, 200};
  sgrad->add_option("--radii", grad_radii, "radii list")->delimiter(',');
  add_common(sgrad, copt);

  auto* pmap = app.add_subcommand("polarization-map", "position angles around a cone");
  double pmap_theta = pi / 12.0;
  int pmap_nphi = 36;
  double pmap_tp = -1.0;
  pmap->add_option("--theta", pmap_theta, "cone polar angle (rad)");
  pmap->add_option("--nphi", pmap_nphi, "azimuthal sample count");
  pmap->add_option("--tp", pmap_tp, "observation time (default: steady state)");
  add_common(pmap, copt);

  auto* bcheck = app.add_subcommand("boundary-check", "source/boundary/direct decomposition");
  std::vector<double> bc_rp{25, 50, 100};
  double bc_factor = 2.0;
  int bc_mt = 64, bc_mp = 128, bc_band = 1;
  bcheck->add_option("--rp", bc_rp, "observer radii")->delimiter(',');
  bcheck->add_option("--rsigma-factor", bc_factor, "R_sigma = factor * R_P");
  bcheck->add_option("--mesh-theta", bc_mt, "surface mesh theta rows");
  bcheck->add_option("--mesh-phi", bc_mp, "surface mesh phi columns");
  bcheck->add_option("--band-factor", bc_band, "extra theta refinement in the subbeam band");
  add_common(bcheck, copt);

  auto* tsphere = app.add_subcommand("two-sphere", "composite diffraction-identity check");
  double ts_rin = 20.0, ts_rout = 40.0, ts_rp = 60.0;
  int ts_mt = 64, ts_mp = 128;
  tsphere->add_option("--rinner", ts_rin, "inner sphere radius");
  tsphere->add_option("--router", ts_rout, "outer sphere radius");
  tsphere->add_option("--rp", ts_rp, "observer radius");
  tsphere->add_option("--mesh-theta", ts_mt, "surface mesh theta rows");
  tsphere->add_option("--mesh-phi", ts_mp, "surface mesh phi columns");
  add_common(tsphere, copt);

  std::vector<const char*> argv;
  argv.push_back("sfl");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 64;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(copt);
    if (app.got_subcommand(dump)) return cmd_dump_config(copt, dump_list);
    if (app.got_subcommand(envelope))
      return cmd_envelope(copt, env_tp, env_plane, env_rays, env_maxr);
    if (app.got_subcommand(field)) return cmd_field(copt, field_at);
    if (app.got_subcommand(sdecay)) return cmd_scan_decay(copt, decay_radii, decay_dir);
    if (app.got_subcommand(sratio)) return cmd_scan_ratio(copt, ratio_sub, ratio_radii, ratio_dir);
    if (app.got_subcommand(swidth)) return cmd_scan_width(copt, width_radii);
    if (app.got_subcommand(sgrad)) return cmd_scan_gradient(copt, grad_radii);
    if (app.got_subcommand(pmap)) return cmd_polarization_map(copt, pmap_theta, pmap_nphi, pmap_tp);
    if (app.got_subcommand(bcheck))
      return cmd_boundary_check(copt, bc_rp, bc_factor, bc_mt, bc_mp, bc_band);
    if (app.got_subcommand(tsphere))
      return cmd_two_sphere(copt, ts_rin, ts_rout, ts_rp, ts_mt, ts_mp);
    std::cerr << app.help();
    return 64;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 4;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace sfl
