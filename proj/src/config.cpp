#include "eswp/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "eswp/errors.hpp"

namespace eswp {

namespace {

struct Entry {
  std::string value;
  std::size_t line;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const Entry& e, const std::string& key) {
  double v = 0.0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(e.line, "cannot parse '" + e.value + "' as a number for " + key);
  }
  return v;
}

std::size_t to_count(const Entry& e, const std::string& key) {
  unsigned long long v = 0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(e.line, "cannot parse '" + e.value + "' as a count for " + key);
  }
  return static_cast<std::size_t>(v);
}

bool to_bool(const Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ConfigError(e.line, "cannot parse '" + e.value + "' as a boolean for " + key);
}

bool is_multiple(double span, double step) {
  const double ratio = span / step;
  const double rounded = std::round(ratio);
  return rounded >= 1.0 && std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, ratio);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double preset_eta(std::string_view name) {
  if (name == "fig2") return 0.0;
  if (name == "fig3") return 0.01;
  if (name == "fig4") return 0.1;
  if (name == "fig5") return 0.9;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected key = value, got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    if (value.empty()) throw ConfigError(line_no, "missing value for " + key);
    if (!entries.emplace(key, Entry{value, line_no}).second) {
      throw ConfigError(line_no, "duplicate key " + key);
    }
  }

  RunConfig cfg;
  if (auto it = entries.find("preset"); it != entries.end()) {
    try {
      cfg.sim.eta = preset_eta(it->second.value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(it->second.line, e.what());
    }
    cfg.preset = it->second.value;
    cfg.atoms = 3.0;
    cfg.sim.nu = 1.0;
    cfg.sim.z0 = 10.0;
    cfg.sim.t_end = 60.0;
    cfg.sim.snapshot_dt = 5.0;
    cfg.sim.dt = 0.001;
  }

  bool explicit_G = false;
  bool explicit_confine = false;
  for (const auto& [key, e] : entries) {
    if (key == "preset") continue;
    if (key == "N") cfg.atoms = to_double(e, key);
    else if (key == "G") { cfg.sim.G = to_double(e, key); explicit_G = true; }
    else if (key == "k") cfg.sim.k = to_double(e, key);
    else if (key == "V0") cfg.sim.V0 = to_double(e, key);
    else if (key == "eta") cfg.sim.eta = to_double(e, key);
    else if (key == "nu") cfg.sim.nu = to_double(e, key);
    else if (key == "z0") cfg.sim.z0 = to_double(e, key);
    else if (key == "dt") cfg.sim.dt = to_double(e, key);
    else if (key == "t_end") cfg.sim.t_end = to_double(e, key);
    else if (key == "snapshot_dt") cfg.sim.snapshot_dt = to_double(e, key);
    else if (key == "wall_height") cfg.sim.wall_height = to_double(e, key);
    else if (key == "confine_x") { cfg.sim.confine_x = to_bool(e, key); explicit_confine = true; }
    else if (key == "imag_dt") cfg.sim.imag_dt = to_double(e, key);
    else if (key == "gs_tol") cfg.sim.gs_tol = to_double(e, key);
    else if (key == "gs_max_iter") cfg.sim.gs_max_iter = to_count(e, key);
    else if (key == "nx") cfg.nx = to_count(e, key);
    else if (key == "nz") cfg.nz = to_count(e, key);
    else if (key == "dx") cfg.dx = to_double(e, key);
    else if (key == "dz") cfg.dz = to_double(e, key);
    else if (key == "x_min") cfg.x_min = to_double(e, key);
    else if (key == "z_min_dom") cfg.z_min_dom = to_double(e, key);
    else if (key == "output_dir") cfg.output_dir = e.value;
    else if (key == "series_stride") cfg.series_stride = to_count(e, key);
    else throw ConfigError(e.line, "unknown key " + key);
  }
  if (!explicit_G) cfg.sim.G = interaction_for_atoms(cfg.atoms);
  if (!explicit_confine) cfg.sim.confine_x = cfg.sim.eta == 0.0;

  auto line_of = [&](std::initializer_list<const char*> keys) -> std::size_t {
    for (const char* k : keys) {
      if (auto it = entries.find(k); it != entries.end()) return it->second.line;
    }
    if (auto it = entries.find("preset"); it != entries.end()) return it->second.line;
    return 0;
  };

  try {
    cfg.sim.validate();
  } catch (const std::invalid_argument& e) {
    // Messages read "SimParams: <field> must ...".
    std::string msg = e.what();
    const auto colon = msg.find(": ");
    const std::string field = msg.substr(colon + 2, msg.find(' ', colon + 2) - colon - 2);
    std::size_t line = 0;
    if (auto it = entries.find(field); it != entries.end()) line = it->second.line;
    throw ConfigError(line, msg);
  }
  if (!(cfg.atoms >= 0.0)) throw ConfigError(line_of({"N"}), "N must be non-negative");
  if (cfg.series_stride == 0) {
    throw ConfigError(line_of({"series_stride"}), "series_stride must be positive");
  }
  if (!is_multiple(cfg.sim.snapshot_dt, cfg.sim.dt)) {
    throw ConfigError(line_of({"snapshot_dt", "dt"}),
                      "snapshot_dt must be an integer multiple of dt");
  }
  if (!is_multiple(cfg.sim.t_end, cfg.sim.dt)) {
    throw ConfigError(line_of({"t_end", "dt"}), "t_end must be an integer multiple of dt");
  }
  Grid grid = [&] {
    try {
      return cfg.grid();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(line_of({"nx", "nz", "dx", "dz"}), e.what());
    }
  }();
  const double z_top = grid.z_min_dom() + grid.lz();
  if (cfg.sim.z0 < 0.0 || cfg.sim.z0 + 5.0 > z_top) {
    throw ConfigError(line_of({"z0", "nz", "dz", "z_min_dom"}),
                      "grid must extend at least 5 above z0 and z0 must be >= 0");
  }
  if (grid.z_min_dom() > 0.0) {
    throw ConfigError(line_of({"z_min_dom"}), "z_min_dom must be <= 0 so the wall is on-grid");
  }
  if (cfg.output_dir.empty()) throw ConfigError(line_of({"output_dir"}), "output_dir is empty");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string print_config(const RunConfig& c) {
  std::ostringstream os;
  if (!c.preset.empty()) os << "preset = " << c.preset << "\n";
  auto d = [&](const char* key, double v) { os << key << " = " << format_double(v) << "\n"; };
  d("N", c.atoms);
  d("G", c.sim.G);
  d("k", c.sim.k);
  d("V0", c.sim.V0);
  d("eta", c.sim.eta);
  d("nu", c.sim.nu);
  d("z0", c.sim.z0);
  d("dt", c.sim.dt);
  d("t_end", c.sim.t_end);
  d("snapshot_dt", c.sim.snapshot_dt);
  d("wall_height", c.sim.wall_height);
  os << "confine_x = " << (c.sim.confine_x ? "true" : "false") << "\n";
  d("imag_dt", c.sim.imag_dt);
  d("gs_tol", c.sim.gs_tol);
  os << "gs_max_iter = " << c.sim.gs_max_iter << "\n";
  os << "nx = " << c.nx << "\n";
  os << "nz = " << c.nz << "\n";
  d("dx", c.dx);
  d("dz", c.dz);
  d("x_min", c.x_min);
  d("z_min_dom", c.z_min_dom);
  os << "output_dir = " << c.output_dir << "\n";
  os << "series_stride = " << c.series_stride << "\n";
  return os.str();
}

}  // namespace eswp
