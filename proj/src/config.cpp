#include "fermispec/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace fermispec::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& field, const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() || errno == ERANGE)
    throw ConfigError(field, "not a number: '" + token + "'");
  return value;
}

long parse_long(const std::string& field, const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const long value = std::strtol(token.c_str(), &end, 10);
  if (token.empty() || end != token.c_str() + token.size() || errno == ERANGE)
    throw ConfigError(field, "not an integer: '" + token + "'");
  return value;
}

std::uint64_t parse_u64(const std::string& field, const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(token.c_str(), &end, 10);
  if (token.empty() || end != token.c_str() + token.size() || errno == ERANGE)
    throw ConfigError(field, "not an unsigned integer: '" + token + "'");
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> whitespace_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

}  // namespace

const char* route_name(Route route) {
  switch (route) {
    case Route::exact: return "exact";
    case Route::tf_zero: return "tf_zero";
    case Route::tf_finite: return "tf_finite";
    case Route::mc_oracle: return "mc_oracle";
    case Route::compare: return "compare";
  }
  return "?";
}

Route route_from_name(const std::string& name) {
  if (name == "exact") return Route::exact;
  if (name == "tf_zero") return Route::tf_zero;
  if (name == "tf_finite") return Route::tf_finite;
  if (name == "mc_oracle") return Route::mc_oracle;
  if (name == "compare") return Route::compare;
  throw ConfigError("route", "unknown route: '" + name + "'");
}

double ScenarioConfig::temperature_in_trap_units(double fermi_energy) const {
  return temperature_unit == TempUnit::fermi_energy
             ? temperature_value * fermi_energy
             : temperature_value;
}

GridSpec parse_grid_spec(const std::string& value) {
  GridSpec grid;
  if (value == "auto") {
    grid.automatic = true;
    return grid;
  }
  const auto parts = split(value, ':');
  if (parts.size() != 3)
    throw ConfigError("grid", "expected 'auto' or 'min:max:points'");
  grid.automatic = false;
  grid.min = parse_double("grid", trim(parts[0]));
  grid.max = parse_double("grid", trim(parts[1]));
  grid.points = parse_long("grid", trim(parts[2]));
  return grid;
}

BroadenSpec parse_broaden_spec(const std::string& value) {
  const auto parts = split(value, ':');
  if (parts.size() != 2)
    throw ConfigError("broaden", "expected '<kernel>:<width>'");
  BroadenSpec broaden;
  try {
    broaden.kernel = exact::kernel_from_name(trim(parts[0]));
  } catch (const DomainError& e) {
    throw ConfigError("broaden", e.what());
  }
  broaden.width = parse_double("broaden", trim(parts[1]));
  return broaden;
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig config;
  config.light.lines.clear();

  std::set<std::string> seen;
  std::set<std::string> required = {"route",    "n_atoms",     "temperature",
                                    "lambda_y", "lambda_z",    "omega_ratio",
                                    "alpha",    "line"};
  std::optional<std::uint64_t> seed;
  std::optional<long> samples;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string entry = trim(raw);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no),
                        "expected 'key = value'");
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(line_no), "empty key");
    if (value.empty()) throw ConfigError(key, "empty value");
    if (!seen.insert(key).second && key != "line")
      throw ConfigError(key, "duplicate key");

    if (key == "route") {
      config.route = route_from_name(value);
    } else if (key == "n_atoms") {
      config.n_atoms = parse_long(key, value);
    } else if (key == "temperature") {
      const auto tokens = whitespace_tokens(value);
      if (tokens.size() != 2)
        throw ConfigError(key,
                          "expected '<value> <unit>' with unit EF or hOmega");
      config.temperature_value = parse_double(key, tokens[0]);
      if (tokens[1] == "EF")
        config.temperature_unit = TempUnit::fermi_energy;
      else if (tokens[1] == "hOmega")
        config.temperature_unit = TempUnit::trap_quantum;
      else
        throw ConfigError(key, "unknown unit tag '" + tokens[1] +
                                   "' (use EF or hOmega)");
    } else if (key == "lambda_y") {
      config.trap.lambda_y = parse_double(key, value);
    } else if (key == "lambda_z") {
      config.trap.lambda_z = parse_double(key, value);
    } else if (key == "omega_ratio") {
      config.trap.omega_ratio = parse_double(key, value);
    } else if (key == "alpha") {
      config.light.alpha = parse_double(key, value);
    } else if (key == "line") {
      const auto tokens = whitespace_tokens(value);
      if (tokens.size() != 2)
        throw ConfigError(key, "expected '<omega_0> <dipole_sq>'");
      LightSpec::Line light_line;
      light_line.omega_0 = parse_double(key, tokens[0]);
      light_line.dipole_sq = parse_double(key, tokens[1]);
      config.light.lines.push_back(light_line);
    } else if (key == "grid") {
      config.grid = parse_grid_spec(value);
    } else if (key == "broaden") {
      config.broaden = parse_broaden_spec(value);
    } else if (key == "seed") {
      seed = parse_u64(key, value);
    } else if (key == "samples") {
      samples = parse_long(key, value);
    } else if (key == "out") {
      config.out_path = value;
    } else if (key == "format") {
      try {
        config.format = format_from_name(value);
      } catch (const DomainError& e) {
        throw ConfigError(key, e.what());
      }
    } else if (key == "emit_lines") {
      if (value == "true")
        config.emit_lines = true;
      else if (value == "false")
        config.emit_lines = false;
      else
        throw ConfigError(key, "expected true or false");
    } else {
      throw ConfigError(key, "unknown key");
    }
  }

  for (const std::string& key : required)
    if (!seen.count(key))
      throw ConfigError(key, "missing required key");

  if (config.route == Route::mc_oracle) {
    if (!seed) throw ConfigError("seed", "required for route = mc_oracle");
    if (!samples)
      throw ConfigError("samples", "required for route = mc_oracle");
    oracles::McConfig mc;
    mc.seed = *seed;
    mc.samples = *samples;
    config.mc = mc;
  } else if (seed || samples) {
    throw ConfigError(seed ? "seed" : "samples",
                      "only valid for route = mc_oracle");
  }
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const ScenarioConfig& config) {
  if (config.n_atoms < 1)
    throw ConfigError("n_atoms", "must be >= 1");
  if (!(config.trap.lambda_y > 0.0))
    throw ConfigError("lambda_y", "must be > 0");
  if (!(config.trap.lambda_z > 0.0))
    throw ConfigError("lambda_z", "must be > 0");
  if (!(config.trap.omega_ratio > 0.0))
    throw ConfigError("omega_ratio", "must be > 0");
  if (!(config.light.alpha > 0.0))
    throw ConfigError("alpha", "must be > 0");
  if (config.light.lines.empty())
    throw ConfigError("line", "at least one excited line required");
  for (const LightSpec::Line& line : config.light.lines)
    if (!(line.dipole_sq >= 0.0))
      throw ConfigError("line", "dipole_sq must be >= 0");
  if (!(config.light.total_dipole_sq() > 0.0))
    throw ConfigError("line", "total dipole weight must be > 0");
  if (config.temperature_value < 0.0)
    throw ConfigError("temperature", "must be >= 0");
  if (!config.grid.automatic) {
    if (!(config.grid.max > config.grid.min))
      throw ConfigError("grid", "requires max > min");
    if (config.grid.points < 2)
      throw ConfigError("grid", "requires at least 2 points");
  }
  if (!(config.broaden.width > 0.0))
    throw ConfigError("broaden", "width must be > 0");
  if (config.mc) {
    try {
      config.mc->validate();
    } catch (const DomainError& e) {
      throw ConfigError("samples", e.what());
    }
  }
  const bool zero_t = config.temperature_value == 0.0;
  if (config.route == Route::tf_finite && zero_t)
    throw ConfigError("temperature",
                      "tf_finite requires T > 0 (use route = tf_zero)");
  if ((config.route == Route::exact || config.route == Route::compare ||
       config.route == Route::tf_zero) &&
      !zero_t)
    throw ConfigError("temperature",
                      "this route is defined at T = 0 only (use tf_finite "
                      "or mc_oracle at finite temperature)");
}

}  // namespace fermispec::io
