#pragma once

#include <optional>
#include <string>

#include "fermispec/exact_spectrum.hpp"
#include "fermispec/oracles.hpp"
#include "fermispec/spectrum_io.hpp"
#include "fermispec/types.hpp"

// Scenario configuration: a flat key = value text format with unit tags.
// Parsing is strict: unknown keys, duplicate keys, missing required keys and
// missing unit tags are all rejected with the offending field named. The only
// defaults are the documented grid ("auto"), broadening (gaussian:0.5),
// output format (csv) and emit_lines (false).
//
//   route = exact | tf_zero | tf_finite | mc_oracle | compare
//   n_atoms = 20
//   temperature = 0.25 EF        (units: EF or hOmega)
//   lambda_y = 1
//   lambda_z = 1
//   omega_ratio = 1
//   alpha = 8
//   line = <omega_0> <dipole_sq> (repeatable, one per excited state)
//   grid = auto | min:max:points
//   broaden = gaussian:0.5 | lorentzian:<width>
//   seed = 7                     (mc_oracle only, required)
//   samples = 1000000            (mc_oracle only, required)
//   out = spectrum.csv
//   format = csv | json
//   emit_lines = true | false

namespace fermispec::io {

enum class Route { exact, tf_zero, tf_finite, mc_oracle, compare };

const char* route_name(Route route);
Route route_from_name(const std::string& name);

enum class TempUnit { fermi_energy, trap_quantum };  // "EF" / "hOmega"

struct GridSpec {
  bool automatic = true;
  double min = 0.0;
  double max = 0.0;
  long points = 0;
};

struct BroadenSpec {
  exact::Kernel kernel = exact::Kernel::gaussian;
  double width = 0.5;
};

struct ScenarioConfig {
  Route route = Route::exact;
  TrapSpec trap;
  LightSpec light;
  long n_atoms = 0;
  double temperature_value = 0.0;
  TempUnit temperature_unit = TempUnit::trap_quantum;
  GridSpec grid;
  BroadenSpec broaden;
  std::optional<oracles::McConfig> mc;
  std::string out_path;
  OutputFormat format = OutputFormat::csv;
  bool emit_lines = false;

  /// Temperature in hbar*Omega_g units given the resolved Fermi energy.
  double temperature_in_trap_units(double fermi_energy) const;
};

/// Parses "auto" or "min:max:points"; used for the grid key and --grid flag.
GridSpec parse_grid_spec(const std::string& value);

/// Parses "<kernel>:<width>"; used for the broaden key and --broaden flag.
BroadenSpec parse_broaden_spec(const std::string& value);

/// Parses the key = value text; throws ConfigError naming the bad field.
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config_file(const std::string& path);

/// Semantic validation of field values and route/value compatibility.
void validate_config(const ScenarioConfig& config);

}  // namespace fermispec::io
