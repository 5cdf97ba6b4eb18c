#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermispec/config.hpp"
#include "fermispec/types.hpp"

// Scenario dispatch: resolves the gas state, picks the grid, runs the
// requested route and packages plot-ready spectra with full provenance
// metadata. Detunings in the output are reported relative to the excited
// line's own transition frequency; multi-line configurations additionally
// emit the summed spectrum on the absolute detuning axis.

namespace fermispec::cli {

struct NamedSpectrum {
  std::string name;  // suffix for output files ("spectrum", "exact", ...)
  Spectrum spectrum;
};

struct ScenarioResult {
  std::vector<NamedSpectrum> spectra;
  std::optional<LineList> line_list;  // exact route with emit_lines = true
};

/// Runs one validated scenario. Throws ConfigError for invalid
/// configurations, CapabilityError for unsupported combinations and
/// NumericalError when a solver fails.
ScenarioResult run_scenario(const io::ScenarioConfig& config);

/// Built-in figure scenarios; each preset expands to one or more named
/// configurations (fig1: anisotropy scan, fig4: temperature scan, fig5:
/// trap-frequency-ratio scan).
std::vector<std::pair<std::string, io::ScenarioConfig>> preset_scenarios(
    const std::string& name);

/// Names accepted by preset_scenarios.
const std::vector<std::string>& preset_names();

}  // namespace fermispec::cli
