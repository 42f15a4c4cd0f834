#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfl/errors.hpp"
#include "sfl/geometry.hpp"

namespace sfl {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr double kSpeedOfLightSI = 299792458.0;  // m/s

enum class ProfileFamily { gaussian, top_hat };

// One separable factor of the source amplitude, either a Gaussian
// (center, sigma) or a top hat (center, full width). Gaussian values are
// cut to exactly zero below a relative floor of 1e-8 so every profile has
// compact support.
struct Profile1D {
  ProfileFamily family = ProfileFamily::gaussian;
  double center = 0.0;
  double width = 1.0;  // sigma for gaussian, full width for top_hat

  double value(double u) const;
  double derivative(double u) const;  // analytic (gaussian) or 0 in the flat interior (top_hat)
  double lo() const;                  // support bounds implied by the family
  double hi() const;
};

inline constexpr double kGaussianFloor = 1e-8;

enum class AzimuthalPattern { harmonic, bump };

// Rotating polarization source. The pattern is either the m-harmonic wave
// train cos(m(phi - omega t)) or a compact co-rotating bump, both
// modulated by cos(capital_omega t). Units: c = 1, omega is kept as a
// field but equals 1 for every config produced by ingestion.
struct SourceConfig {
  int m = 2;
  double omega = 1.0;
  double capital_omega = 0.0;
  AzimuthalPattern pattern = AzimuthalPattern::harmonic;
  double bump_sigma = 0.0;  // gaussian width of the co-rotating bump, rad

  Profile1D radial;
  Profile1D axial;
  Vec3 amplitude{0.0, 0.0, 1.0};  // (s_r, s_phi, s_z) component amplitudes

  double r_l = 0.0, r_u = 0.0;      // radial support actually integrated
  double z_min = 0.0, z_max = 0.0;  // axial support
  double switch_on_time = 0.0;      // emission starts here (null initial conditions)

  // Finite-difference step for weak derivatives of top-hat edges.
  double h_div() const { return 1e-4 * (r_u - r_l + z_max - z_min); }

  bool superluminal() const { return r_l * omega > 1.0; }

  // Fills support from the profile families when left unset.
  void finalize();
  // Returns human-readable violations; empty means valid. When
  // `superluminal_run` is set the support must lie outside the light
  // cylinder.
  std::vector<std::string> validate(bool superluminal_run) const;

  std::string dump() const;        // canonical key = value form, 17 significant digits
  std::uint64_t hash() const;      // FNV-1a over dump()
};

// Electrode-array machine, all lengths/times in SI.
struct MachineConfig {
  int n_electrodes = 41;
  double electrode_width = 0.0426;      // m
  double electrode_pitch = 0.0446;      // m
  double arc_radius = 10.025;           // m
  double dielectric_thickness = 0.010;  // m
  double dielectric_width = 0.050;      // m
  double v0 = 1.0;                      // voltage amplitude, arbitrary units
  double delta_t = 148.8e-12;           // s, inter-electrode switching delay
  double m_omega = 2.0 * pi * 552.645e6;        // rad/s
  double capital_omega = 2.0 * pi * 46.042e6;   // rad/s

  double pattern_speed() const { return electrode_pitch / delta_t; }  // m/s
  double v_over_c() const { return pattern_speed() / kSpeedOfLightSI; }

  std::vector<std::string> validate() const;
  std::string dump() const;
};

// Discrete radiator set derived from a MachineConfig, in dimensionless
// units (length c/omega_eff, time 1/omega_eff with omega_eff = v/arc_radius).
struct DiscreteSource {
  struct Cell {
    double r, phi, z;        // cell center
    double dr, arc, dz;      // extents (arc = along-strip width)
    double amplitude;        // axial polarization amplitude
    double phase_delay;      // j * delta_t in dimensionless time
  };
  std::vector<Cell> cells;
  double m_omega = 0.0;        // dimensionless (= effective azimuthal mode, need not be integer)
  double capital_omega = 0.0;  // dimensionless
  double v_over_c = 0.0;

  std::string dump() const;
};

struct RunOptions {
  std::string mode = "superluminal";  // superluminal | subluminal | static
  int jobs = 0;                       // 0 = hardware default
  bool strict = false;
  std::string out_dir;                // empty = $SFL_OUT_DIR or "."
  // Default quadrature knobs (overridable per subcommand).
  int n_r = 8, n_phi = 64, n_z = 16;
  int refine = 1;
  double phase_tol = pi / 4.0;
  double filament_boost = 1.0;
  double filament_halfwidth = 0.0;
};

struct LoadedConfig {
  std::optional<SourceConfig> source;
  std::optional<MachineConfig> machine;
  RunOptions run;
  std::string origin;  // file path or preset name

  std::string resolved_dump() const;
  const SourceConfig& require_source() const;
};

// Loads a config from a file path or "preset:<name>". Throws ParseError /
// InvariantError. SI-suffixed values are nondimensionalized on ingestion.
LoadedConfig load_config(const std::string& path_or_preset);
LoadedConfig parse_config_text(const std::string& text, const std::string& origin);

std::vector<std::string> preset_names();
std::string preset_text(const std::string& name);  // throws ParseError if unknown

std::string format_double(double v);  // 17 significant digits, locale-free

}  // namespace sfl
