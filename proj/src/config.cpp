#include "sfl/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace sfl {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Profile1D

double Profile1D::value(double u) const {
  if (family == ProfileFamily::top_hat) {
    const double h = 0.5 * width;
    return (u >= center - h && u <= center + h) ? 1.0 : 0.0;
  }
  const double x = (u - center) / width;
  const double g = std::exp(-0.5 * x * x);
  return g < kGaussianFloor ? 0.0 : g;
}

double Profile1D::derivative(double u) const {
  if (family == ProfileFamily::top_hat) return 0.0;  // flat interior, edges handled weakly
  const double x = (u - center) / width;
  const double g = std::exp(-0.5 * x * x);
  if (g < kGaussianFloor) return 0.0;
  return -x / width * g;
}

double Profile1D::lo() const {
  if (family == ProfileFamily::top_hat) return center - 0.5 * width;
  // 1e-8 relative floor: exp(-x^2/2) = 1e-8 at x = 6.0697
  return center - 6.0697 * width;
}

double Profile1D::hi() const {
  if (family == ProfileFamily::top_hat) return center + 0.5 * width;
  return center + 6.0697 * width;
}

// ---------------------------------------------------------------------------
// SourceConfig

void SourceConfig::finalize() {
  if (r_u <= r_l) {
    r_l = std::max(radial.lo(), 1e-9);
    r_u = radial.hi();
  }
  if (z_max <= z_min) {
    z_min = axial.lo();
    z_max = axial.hi();
  }
}

std::vector<std::string> SourceConfig::validate(bool superluminal_run) const {
  std::vector<std::string> v;
  if (m < 1) v.push_back("azimuthal mode invariant: m must be an integer >= 1");
  if (r_l <= 0.0) v.push_back("support invariant: r_l must be positive");
  if (r_u <= r_l) v.push_back("support invariant: r_u must exceed r_l");
  if (z_max <= z_min) v.push_back("support invariant: z_max must exceed z_min");
  if (omega < 0.0) v.push_back("omega invariant: omega must be non-negative");
  if (superluminal_run && r_l * omega <= 1.0)
    v.push_back("support invariant: superluminal run requires r_l*omega/c > 1 (got " +
                format_double(r_l * omega) + ")");
  if (pattern == AzimuthalPattern::bump && bump_sigma <= 0.0)
    v.push_back("pattern invariant: bump pattern requires bump_sigma > 0");
  return v;
}

static const char* family_name(ProfileFamily f) {
  return f == ProfileFamily::gaussian ? "gaussian" : "top_hat";
}

std::string SourceConfig::dump() const {
  std::ostringstream os;
  os << "m = " << m << "\n";
  os << "omega = " << format_double(omega) << "\n";
  os << "capital_omega = " << format_double(capital_omega) << "\n";
  os << "pattern = " << (pattern == AzimuthalPattern::harmonic ? "harmonic" : "bump") << "\n";
  if (pattern == AzimuthalPattern::bump) os << "bump_sigma = " << format_double(bump_sigma) << "\n";
  os << "radial_family = " << family_name(radial.family) << "\n";
  os << "radial_center = " << format_double(radial.center) << "\n";
  os << "radial_width = " << format_double(radial.width) << "\n";
  os << "radial_support = " << format_double(r_l) << ", " << format_double(r_u) << "\n";
  os << "axial_family = " << family_name(axial.family) << "\n";
  os << "axial_center = " << format_double(axial.center) << "\n";
  os << "axial_width = " << format_double(axial.width) << "\n";
  os << "axial_support = " << format_double(z_min) << ", " << format_double(z_max) << "\n";
  os << "amplitude = " << format_double(amplitude.x) << ", " << format_double(amplitude.y) << ", "
     << format_double(amplitude.z) << "\n";
  os << "switch_on_time = " << format_double(switch_on_time) << "\n";
  os << "light_cylinder_r_l = " << format_double(r_l * omega) << "\n";
  os << "light_cylinder_r_u = " << format_double(r_u * omega) << "\n";
  return os.str();
}

std::uint64_t SourceConfig::hash() const {
  // FNV-1a over the canonical dump
  const std::string d = dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : d) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// MachineConfig

std::vector<std::string> MachineConfig::validate() const {
  std::vector<std::string> v;
  if (n_electrodes < 2) v.push_back("machine invariant: n_electrodes must be >= 2");
  if (electrode_width <= 0.0 || electrode_pitch <= 0.0 || arc_radius <= 0.0 ||
      dielectric_thickness <= 0.0 || dielectric_width <= 0.0)
    v.push_back("machine invariant: all lengths must be positive");
  if (delta_t <= 0.0) v.push_back("machine invariant: delta_t must be positive");
  return v;
}

std::string MachineConfig::dump() const {
  std::ostringstream os;
  os << "n_electrodes = " << n_electrodes << "\n";
  os << "electrode_width_m = " << format_double(electrode_width) << "\n";
  os << "electrode_pitch_m = " << format_double(electrode_pitch) << "\n";
  os << "arc_radius_m = " << format_double(arc_radius) << "\n";
  os << "dielectric_thickness_m = " << format_double(dielectric_thickness) << "\n";
  os << "dielectric_width_m = " << format_double(dielectric_width) << "\n";
  os << "v0 = " << format_double(v0) << "\n";
  os << "delta_t_s = " << format_double(delta_t) << "\n";
  os << "m_omega_rad_per_s = " << format_double(m_omega) << "\n";
  os << "capital_omega_rad_per_s = " << format_double(capital_omega) << "\n";
  os << "f_pattern_MHz = " << format_double(m_omega / (2.0 * pi) * 1e-6) << "\n";
  os << "f_modulation_MHz = " << format_double(capital_omega / (2.0 * pi) * 1e-6) << "\n";
  os << "v_over_c = " << format_double(v_over_c()) << "\n";
  return os.str();
}

std::string DiscreteSource::dump() const {
  std::ostringstream os;
  os << "n_cells = " << cells.size() << "\n";
  os << "m_omega = " << format_double(m_omega) << "\n";
  os << "capital_omega = " << format_double(capital_omega) << "\n";
  os << "v_over_c = " << format_double(v_over_c) << "\n";
  if (!cells.empty()) {
    os << "cell_radius = " << format_double(cells.front().r) << "\n";
    os << "cell_arc = " << format_double(cells.front().arc) << "\n";
    os << "cell_dr = " << format_double(cells.front().dr) << "\n";
    os << "cell_dz = " << format_double(cells.front().dz) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Key-value config text

namespace {

struct RawValue {
  std::string text;
  int line = 0;
};

struct RawConfig {
  std::map<std::string, std::map<std::string, RawValue>> sections;
  std::string origin;
};

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

RawConfig parse_raw(const std::string& text, const std::string& origin) {
  RawConfig rc;
  rc.origin = origin;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(origin, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) parse_fail(origin, lineno, "empty section name");
      rc.sections[section];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) parse_fail(origin, lineno, "expected key = value");
    if (section.empty()) parse_fail(origin, lineno, "key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) parse_fail(origin, lineno, "empty key");
    rc.sections[section][key] = RawValue{val, lineno};
  }
  return rc;
}

// Unit-suffixed scalar: "10.025 m", "148.8 ps", "552.645 MHz", plain number.
enum class Dim { none, length, time, frequency, ang_frequency };

struct Quantity {
  double value = 0.0;  // SI when dim != none
  Dim dim = Dim::none;
};

Quantity parse_quantity(const std::string& text, const std::string& origin, int line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    parse_fail(origin, line, "not a number: '" + text + "'");
  }
  std::string unit = trim(text.substr(pos));
  if (unit.empty()) return {v, Dim::none};
  static const std::map<std::string, std::pair<double, Dim>> units = {
      {"m", {1.0, Dim::length}},       {"mm", {1e-3, Dim::length}},
      {"cm", {1e-2, Dim::length}},     {"km", {1e3, Dim::length}},
      {"s", {1.0, Dim::time}},         {"ms", {1e-3, Dim::time}},
      {"us", {1e-6, Dim::time}},       {"ns", {1e-9, Dim::time}},
      {"ps", {1e-12, Dim::time}},      {"Hz", {1.0, Dim::frequency}},
      {"kHz", {1e3, Dim::frequency}},  {"MHz", {1e6, Dim::frequency}},
      {"GHz", {1e9, Dim::frequency}},  {"rad/s", {1.0, Dim::ang_frequency}},
  };
  const auto it = units.find(unit);
  if (it == units.end()) parse_fail(origin, line, "unknown unit '" + unit + "'");
  return {v * it->second.first, it->second.second};
}

class SectionReader {
 public:
  SectionReader(const RawConfig& rc, const std::string& name)
      : rc_(rc), name_(name), kv_(nullptr) {
    auto it = rc.sections.find(name);
    if (it != rc.sections.end()) kv_ = &it->second;
  }

  bool present() const { return kv_ != nullptr; }
  bool has(const std::string& key) const { return kv_ && kv_->count(key) > 0; }

  Quantity quantity(const std::string& key, Quantity dflt) const {
    if (!has(key)) return dflt;
    const RawValue& rv = kv_->at(key);
    return parse_quantity(rv.text, rc_.origin, rv.line);
  }

  double number(const std::string& key, double dflt) const {
    const Quantity q = quantity(key, {dflt, Dim::none});
    return q.value;
  }

  int integer(const std::string& key, int dflt) const {
    if (!has(key)) return dflt;
    const RawValue& rv = kv_->at(key);
    const double v = parse_quantity(rv.text, rc_.origin, rv.line).value;
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9)
      parse_fail(rc_.origin, rv.line, "expected an integer for '" + key + "'");
    return i;
  }

  std::string word(const std::string& key, const std::string& dflt) const {
    if (!has(key)) return dflt;
    return kv_->at(key).text;
  }

  bool boolean(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    const RawValue& rv = kv_->at(key);
    if (rv.text == "true" || rv.text == "1" || rv.text == "yes") return true;
    if (rv.text == "false" || rv.text == "0" || rv.text == "no") return false;
    parse_fail(rc_.origin, rv.line, "expected a boolean for '" + key + "'");
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> dflt) const {
    if (!has(key)) return dflt;
    const RawValue& rv = kv_->at(key);
    std::vector<double> out;
    std::stringstream ss(rv.text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      out.push_back(parse_quantity(item, rc_.origin, rv.line).value);
    }
    if (out.empty()) parse_fail(rc_.origin, rv.line, "expected a number list for '" + key + "'");
    return out;
  }

  int line_of(const std::string& key) const { return has(key) ? kv_->at(key).line : 0; }

 private:
  const RawConfig& rc_;
  std::string name_;
  const std::map<std::string, RawValue>* kv_;
};

ProfileFamily parse_family(const std::string& word, const std::string& origin, int line) {
  if (word == "gaussian") return ProfileFamily::gaussian;
  if (word == "top_hat") return ProfileFamily::top_hat;
  parse_fail(origin, line, "unknown profile family '" + word + "' (gaussian | top_hat)");
}

SourceConfig read_source(const RawConfig& rc) {
  SectionReader s(rc, "source");
  SourceConfig cfg;
  cfg.m = s.integer("m", 2);

  const Quantity omega_q = s.quantity("omega", {1.0, Dim::none});
  double length_scale = 1.0;  // multiply SI lengths by this to nondimensionalize
  bool si = false;
  if (omega_q.dim == Dim::ang_frequency) {
    si = true;
    length_scale = omega_q.value / kSpeedOfLightSI;
    cfg.omega = 1.0;
  } else if (omega_q.dim != Dim::none) {
    parse_fail(rc.origin, s.line_of("omega"), "omega must be dimensionless or in rad/s");
  } else {
    cfg.omega = omega_q.value;
  }

  auto length_value = [&](const char* key, double dflt) {
    const Quantity q = s.quantity(key, {dflt, Dim::none});
    if (q.dim == Dim::length) {
      if (!si)
        parse_fail(rc.origin, s.line_of(key), "SI length given but omega is dimensionless");
      return q.value * length_scale;
    }
    if (q.dim != Dim::none) parse_fail(rc.origin, s.line_of(key), "expected a length");
    return q.value;
  };

  const Quantity co = s.quantity("capital_omega", {0.0, Dim::none});
  if (co.dim == Dim::ang_frequency || co.dim == Dim::frequency) {
    if (!si) parse_fail(rc.origin, s.line_of("capital_omega"), "SI frequency but omega is dimensionless");
    const double w = co.dim == Dim::frequency ? two_pi * co.value : co.value;
    cfg.capital_omega = w / omega_q.value;
  } else {
    cfg.capital_omega = co.value;
  }

  const std::string pat = s.word("pattern", "harmonic");
  if (pat == "harmonic")
    cfg.pattern = AzimuthalPattern::harmonic;
  else if (pat == "bump")
    cfg.pattern = AzimuthalPattern::bump;
  else
    parse_fail(rc.origin, s.line_of("pattern"), "unknown pattern '" + pat + "'");
  cfg.bump_sigma = s.number("bump_sigma", 0.0);

  cfg.radial.family = parse_family(s.word("radial_family", "gaussian"), rc.origin,
                                   s.line_of("radial_family"));
  cfg.radial.center = length_value("radial_center", 1.25);
  cfg.radial.width = length_value("radial_width", 0.05);
  cfg.axial.family = parse_family(s.word("axial_family", "gaussian"), rc.origin,
                                  s.line_of("axial_family"));
  cfg.axial.center = length_value("axial_center", 0.0);
  cfg.axial.width = length_value("axial_width", 0.2);

  if (s.has("radial_support")) {
    const auto v = s.numbers("radial_support", {});
    if (v.size() != 2) parse_fail(rc.origin, s.line_of("radial_support"), "expected lo, hi");
    cfg.r_l = si ? v[0] * length_scale : v[0];
    cfg.r_u = si ? v[1] * length_scale : v[1];
  }
  if (s.has("axial_support")) {
    const auto v = s.numbers("axial_support", {});
    if (v.size() != 2) parse_fail(rc.origin, s.line_of("axial_support"), "expected lo, hi");
    cfg.z_min = si ? v[0] * length_scale : v[0];
    cfg.z_max = si ? v[1] * length_scale : v[1];
  }
  if (s.has("amplitude")) {
    const auto v = s.numbers("amplitude", {});
    if (v.size() != 3) parse_fail(rc.origin, s.line_of("amplitude"), "expected r, phi, z");
    cfg.amplitude = {v[0], v[1], v[2]};
  }
  cfg.switch_on_time = s.number("switch_on", 0.0);
  cfg.finalize();
  return cfg;
}

MachineConfig read_machine(const RawConfig& rc) {
  SectionReader s(rc, "machine");
  MachineConfig mc;
  mc.n_electrodes = s.integer("n_electrodes", mc.n_electrodes);
  auto si_length = [&](const char* key, double dflt) {
    const Quantity q = s.quantity(key, {dflt, Dim::length});
    if (q.dim != Dim::length) parse_fail(rc.origin, s.line_of(key), "expected an SI length");
    return q.value;
  };
  mc.electrode_width = si_length("electrode_width", mc.electrode_width);
  mc.electrode_pitch = si_length("electrode_pitch", mc.electrode_pitch);
  mc.arc_radius = si_length("arc_radius", mc.arc_radius);
  mc.dielectric_thickness = si_length("dielectric_thickness", mc.dielectric_thickness);
  mc.dielectric_width = si_length("dielectric_width", mc.dielectric_width);
  mc.v0 = s.number("v0", mc.v0);
  {
    const Quantity q = s.quantity("delta_t", {mc.delta_t, Dim::time});
    if (q.dim != Dim::time) parse_fail(rc.origin, s.line_of("delta_t"), "expected an SI time");
    mc.delta_t = q.value;
  }
  auto si_angfreq = [&](const char* key, double dflt) {
    const Quantity q = s.quantity(key, {dflt, Dim::ang_frequency});
    if (q.dim == Dim::frequency) return two_pi * q.value;
    if (q.dim != Dim::ang_frequency) parse_fail(rc.origin, s.line_of(key), "expected Hz or rad/s");
    return q.value;
  };
  mc.m_omega = si_angfreq("f_pattern", mc.m_omega);
  mc.capital_omega = si_angfreq("f_modulation", mc.capital_omega);
  return mc;
}

RunOptions read_run(const RawConfig& rc) {
  SectionReader s(rc, "run");
  RunOptions run;
  run.mode = s.word("mode", run.mode);
  if (run.mode != "superluminal" && run.mode != "subluminal" && run.mode != "static")
    parse_fail(rc.origin, s.line_of("mode"), "mode must be superluminal | subluminal | static");
  run.jobs = s.integer("jobs", run.jobs);
  run.strict = s.boolean("strict", run.strict);
  run.out_dir = s.word("out_dir", run.out_dir);
  if (s.has("grid")) {
    const auto g = s.numbers("grid", {});
    if (g.size() != 3) parse_fail(rc.origin, s.line_of("grid"), "grid expects n_r, n_phi, n_z");
    run.n_r = static_cast<int>(g[0]);
    run.n_phi = static_cast<int>(g[1]);
    run.n_z = static_cast<int>(g[2]);
  }
  run.refine = s.integer("refine", run.refine);
  run.phase_tol = s.number("phase_tol", run.phase_tol);
  run.filament_boost = s.number("filament_boost", run.filament_boost);
  run.filament_halfwidth = s.number("filament_halfwidth", run.filament_halfwidth);
  return run;
}

}  // namespace

// ---------------------------------------------------------------------------
// Presets

namespace {

// Paper-dimension electrode machine (mean radius 10.025 m, 41 electrodes of
// width 42.6 mm at 44.6 mm pitch; run frequencies 552.645 / 46.042 MHz).
constexpr const char* kPresetMachine2004 = R"(
[machine]
n_electrodes = 41
electrode_width = 42.6 mm
electrode_pitch = 44.6 mm
arc_radius = 10.025 m
dielectric_thickness = 10 mm
dielectric_width = 50 mm
v0 = 1.0
delta_t = 148.8 ps
f_pattern = 552.645 MHz
f_modulation = 46.042 MHz

[run]
mode = superluminal
)";

// Subluminal reference source (pattern speed 0.875 c at the ring center).
constexpr const char* kPresetSub0875 = R"(
[source]
m = 2
omega = 1.0
capital_omega = 0.0
radial_family = gaussian
radial_center = 0.875
radial_width = 0.03
radial_support = 0.755, 0.99
axial_family = gaussian
axial_center = 0.0
axial_width = 0.12
axial_support = -0.5, 0.5
amplitude = 0, 0, 1

[run]
mode = subluminal
grid = 10, 32, 8
refine = 1
)";

// Superluminal thin ring at 1.25 c: decay-exponent, boundary-dominance and
// gradient scans along the cusp cone theta = arcsin(1/1.25).
constexpr const char* kPresetSuper125 = R"(
[source]
m = 16
omega = 1.0
capital_omega = 0.0
radial_family = top_hat
radial_center = 1.25
radial_width = 0.007
axial_family = top_hat
axial_center = 0.0
axial_width = 4.0
amplitude = 0, 1, 0

[run]
mode = superluminal
grid = 4, 128, 64
refine = 1
)";

// Taller, higher-m ring for subbeam-width scaling (geometric width must
// dominate the caustic diffraction width out to R_P = 200).
constexpr const char* kPresetSuperBeam = R"(
[source]
m = 32
omega = 1.0
capital_omega = 0.0
radial_family = top_hat
radial_center = 1.25
radial_width = 0.006
axial_family = top_hat
axial_center = 0.0
axial_width = 5.0
amplitude = 0, 1, 0

[run]
mode = superluminal
grid = 4, 192, 160
refine = 2
)";

// Machine-speed pair for the intensity-ratio experiment; identical geometry
// except the pattern speed (ring radius in units of c/omega).
constexpr const char* kPresetRatioSuper1064 = R"(
[source]
m = 8
omega = 1.0
capital_omega = 0.0
radial_family = top_hat
radial_center = 1.064
radial_width = 0.006
axial_family = top_hat
axial_center = 0.0
axial_width = 5.0
amplitude = 0, 1, 0

[run]
mode = superluminal
grid = 4, 64, 48
refine = 1
)";

constexpr const char* kPresetRatioSub0875 = R"(
[source]
m = 8
omega = 1.0
capital_omega = 0.0
radial_family = top_hat
radial_center = 0.875
radial_width = 0.006
axial_family = top_hat
axial_center = 0.0
axial_width = 5.0
amplitude = 0, 1, 0

[run]
mode = subluminal
grid = 4, 64, 48
refine = 1
)";

// Compact co-rotating source element at r omega / c = 2 (polarization-angle
// sweeps on the cone theta_P = pi/12).
constexpr const char* kPresetElement20 = R"(
[source]
m = 1
omega = 1.0
capital_omega = 0.0
pattern = bump
bump_sigma = 0.0106
radial_family = top_hat
radial_center = 2.0
radial_width = 0.05
axial_family = top_hat
axial_center = 0.0
axial_width = 0.05
amplitude = 0, 0, 1

[run]
mode = superluminal
grid = 2, 1536, 2
refine = 0
)";

const std::map<std::string, const char*>& preset_map() {
  static const std::map<std::string, const char*> presets = {
      {"machine-2004", kPresetMachine2004},
      {"sub-0.875", kPresetSub0875},
      {"super-1.25", kPresetSuper125},
      {"super-beam", kPresetSuperBeam},
      {"ratio-super-1.064", kPresetRatioSuper1064},
      {"ratio-sub-0.875", kPresetRatioSub0875},
      {"element-2.0", kPresetElement20},
  };
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : preset_map()) names.push_back(k);
  return names;
}

std::string preset_text(const std::string& name) {
  const auto it = preset_map().find(name);
  if (it == preset_map().end()) throw ParseError("unknown preset '" + name + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// LoadedConfig

std::string LoadedConfig::resolved_dump() const {
  std::ostringstream os;
  os << "tool_version = " << kVersion << "\n";
  os << "origin = " << origin << "\n";
  os << "units = dimensionless (c = 1, omega = 1)\n";
  if (source) {
    os << "[source]\n" << source->dump();
    os << "config_hash = " << source->hash() << "\n";
  }
  if (machine) {
    os << "[machine]\n" << machine->dump();
  }
  os << "[run]\n";
  os << "mode = " << run.mode << "\n";
  os << "jobs = " << run.jobs << "\n";
  os << "strict = " << (run.strict ? "true" : "false") << "\n";
  os << "grid = " << run.n_r << ", " << run.n_phi << ", " << run.n_z << "\n";
  os << "refine = " << run.refine << "\n";
  os << "phase_tol = " << format_double(run.phase_tol) << "\n";
  os << "filament_boost = " << format_double(run.filament_boost) << "\n";
  os << "filament_halfwidth = " << format_double(run.filament_halfwidth) << "\n";
  return os.str();
}

const SourceConfig& LoadedConfig::require_source() const {
  if (!source) throw ParseError(origin + ": missing [source] section");
  return *source;
}

LoadedConfig parse_config_text(const std::string& text, const std::string& origin) {
  const RawConfig rc = parse_raw(text, origin);
  LoadedConfig lc;
  lc.origin = origin;
  if (rc.sections.count("source")) lc.source = read_source(rc);
  if (rc.sections.count("machine")) lc.machine = read_machine(rc);
  lc.run = read_run(rc);
  if (!lc.source && !lc.machine)
    throw ParseError(origin + ": missing [source] section (and no [machine] either)");

  // Invariant pass (exit code 3 territory).
  std::vector<std::string> violations;
  if (lc.source) {
    auto v = lc.source->validate(lc.run.mode == "superluminal");
    violations.insert(violations.end(), v.begin(), v.end());
  }
  if (lc.machine) {
    auto v = lc.machine->validate();
    violations.insert(violations.end(), v.begin(), v.end());
  }
  if (!violations.empty()) {
    std::string msg = origin + ": invariant violation";
    for (const auto& s : violations) msg += "\n  " + s;
    throw InvariantError(msg);
  }
  return lc;
}

LoadedConfig load_config(const std::string& path_or_preset) {
  if (path_or_preset.rfind("preset:", 0) == 0) {
    const std::string name = path_or_preset.substr(7);
    return parse_config_text(preset_text(name), path_or_preset);
  }
  std::ifstream f(path_or_preset);
  if (!f) throw ParseError(path_or_preset + ": cannot open file");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str(), path_or_preset);
}

}  // namespace sfl
