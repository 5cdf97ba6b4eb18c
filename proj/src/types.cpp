#include "fermispec/types.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace fermispec {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void TrapSpec::validate() const {
  if (!(omega_g > 0.0)) throw DomainError("TrapSpec: omega_g must be > 0");
  if (!(lambda_y > 0.0)) throw DomainError("TrapSpec: lambda_y must be > 0");
  if (!(lambda_z > 0.0)) throw DomainError("TrapSpec: lambda_z must be > 0");
  if (!(omega_ratio > 0.0))
    throw DomainError("TrapSpec: omega_ratio must be > 0");
}

void LightSpec::validate() const {
  if (!(alpha > 0.0)) throw DomainError("LightSpec: alpha must be > 0");
  if (lines.empty())
    throw DomainError("LightSpec: at least one excited line required");
  for (const Line& line : lines) {
    if (!(line.dipole_sq >= 0.0))
      throw DomainError("LightSpec: dipole_sq must be >= 0");
    if (!std::isfinite(line.omega_0))
      throw DomainError("LightSpec: omega_0 must be finite");
  }
}

double LightSpec::total_dipole_sq() const {
  double sum = 0.0;
  for (const Line& line : lines) sum += line.dipole_sq;
  return sum;
}

double GasState::beta_mu() const {
  if (temperature == 0.0)
    return std::numeric_limits<double>::infinity();
  return chemical_potential / temperature;
}

double GasState::beta_fermi() const {
  if (temperature == 0.0)
    return std::numeric_limits<double>::infinity();
  return fermi_energy / temperature;
}

double LineList::min_detuning() const {
  double v = std::numeric_limits<double>::infinity();
  for (const Line& line : lines) v = std::min(v, line.detuning);
  return v;
}

double LineList::max_detuning() const {
  double v = -std::numeric_limits<double>::infinity();
  for (const Line& line : lines) v = std::max(v, line.detuning);
  return v;
}

void SpectrumMeta::set(const std::string& key, const std::string& value) {
  entries[key] = value;
}

void SpectrumMeta::set_num(const std::string& key, double value) {
  entries[key] = format_double(value);
}

void SpectrumMeta::set_int(const std::string& key, long long value) {
  entries[key] = std::to_string(value);
}

bool SpectrumMeta::has(const std::string& key) const {
  return entries.count(key) > 0;
}

const std::string& SpectrumMeta::at(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) throw Error("SpectrumMeta: missing key " + key);
  return it->second;
}

double SpectrumMeta::num(const std::string& key) const {
  return std::stod(at(key));
}

void validate_grid(const Eigen::ArrayXd& grid) {
  if (grid.size() < 2) throw DomainError("grid: need at least two points");
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw DomainError("grid: detunings must be strictly increasing");
}

}  // namespace fermispec
