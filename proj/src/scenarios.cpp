#include "fermispec/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "fermispec/fermi_gas.hpp"
#include "fermispec/finite_temperature.hpp"
#include "fermispec/thomas_fermi.hpp"
#include "fermispec/version.hpp"

namespace fermispec::cli {

namespace {

using io::GridSpec;
using io::Route;
using io::ScenarioConfig;
using io::TempUnit;

Eigen::ArrayXd manual_grid(const GridSpec& grid) {
  return Eigen::ArrayXd::LinSpaced(grid.points, grid.min, grid.max);
}

LightSpec single_relative_line(const LightSpec& light, size_t index) {
  LightSpec out;
  out.alpha = light.alpha;
  out.lines = {LightSpec::Line{0.0, light.lines[index].dipole_sq}};
  return out;
}

/// Insert-if-absent so route-specific metadata set by the compute layer wins.
void stamp(Spectrum& spectrum, const std::string& key,
           const std::string& value) {
  spectrum.meta.entries.emplace(key, value);
}

void stamp_common(Spectrum& spectrum, const ScenarioConfig& config,
                  const GasState& gas, const std::string& reference) {
  stamp(spectrum, "code_version", FERMISPEC_VERSION);
  stamp(spectrum, "route", io::route_name(config.route));
  stamp(spectrum, "n_atoms", std::to_string(config.n_atoms));
  stamp(spectrum, "temperature_input",
        format_double(config.temperature_value) + " " +
            (config.temperature_unit == TempUnit::fermi_energy ? "EF"
                                                               : "hOmega"));
  stamp(spectrum, "temperature", format_double(gas.temperature));
  stamp(spectrum, "lambda_y", format_double(config.trap.lambda_y));
  stamp(spectrum, "lambda_z", format_double(config.trap.lambda_z));
  stamp(spectrum, "omega_ratio", format_double(config.trap.omega_ratio));
  stamp(spectrum, "alpha", format_double(config.light.alpha));
  for (size_t i = 0; i < config.light.lines.size(); ++i)
    stamp(spectrum, "line_" + std::to_string(i),
          format_double(config.light.lines[i].omega_0) + " " +
              format_double(config.light.lines[i].dipole_sq));
  if (config.grid.automatic) {
    stamp(spectrum, "grid", "auto");
  } else {
    stamp(spectrum, "grid",
          format_double(config.grid.min) + ":" +
              format_double(config.grid.max) + ":" +
              std::to_string(config.grid.points));
  }
  stamp(spectrum, "broaden",
        std::string(exact::kernel_name(config.broaden.kernel)) + ":" +
            format_double(config.broaden.width));
  stamp(spectrum, "fermi_energy", format_double(gas.fermi_energy));
  stamp(spectrum, "chemical_potential",
        format_double(gas.chemical_potential));
  const double w = tf::support_half_width(config.light.alpha,
                                          gas.fermi_energy);
  stamp(spectrum, "support_half_width", format_double(w));
  stamp(spectrum, "half_width_alt", format_double(0.5 * w));
  stamp(spectrum, "detuning_reference", reference);
}

std::string line_reference(const LightSpec& light, size_t index) {
  return "omega_0_ex" + std::to_string(index) + " = " +
         format_double(light.lines[index].omega_0);
}

Spectrum run_exact_single(const ScenarioConfig& config, const GasState& gas,
                          const LightSpec& light) {
  (void)gas;
  const LineList list =
      exact::exact_line_list(config.trap, light, config.n_atoms);
  const Eigen::ArrayXd grid =
      config.grid.automatic
          ? exact::default_line_grid(list, config.broaden.width)
          : manual_grid(config.grid);
  return exact::broaden(list, config.broaden.kernel, config.broaden.width,
                        grid);
}

Spectrum run_tf_zero_single(const ScenarioConfig& config, const GasState& gas,
                            const LightSpec& light) {
  const Eigen::ArrayXd grid =
      config.grid.automatic
          ? tf::default_grid_T0(config.trap, light, config.n_atoms)
          : manual_grid(config.grid);
  (void)gas;
  return tf::tf_lineshape_T0(grid, config.trap, light, config.n_atoms);
}

Spectrum run_tf_finite_single(const ScenarioConfig& config,
                              const GasState& gas, const LightSpec& light) {
  const Eigen::ArrayXd grid =
      config.grid.automatic
          ? ftemp::default_grid_finite_T(config.trap, light, gas)
          : manual_grid(config.grid);
  return ftemp::spectrum_finite_T(grid, config.trap, light, gas);
}

Spectrum run_mc_single(const ScenarioConfig& config, const GasState& gas,
                       const LightSpec& light) {
  Eigen::ArrayXd grid;
  if (!config.grid.automatic) {
    grid = manual_grid(config.grid);
  } else if (gas.temperature == 0.0) {
    grid = tf::default_grid_T0(config.trap, light, config.n_atoms, 201);
  } else {
    grid = ftemp::default_grid_finite_T(config.trap, light, gas, 201);
  }
  return oracles::mc_phase_space_spectrum(config.trap, light, gas,
                                          *config.mc, grid);
}

ScenarioResult run_compare(const ScenarioConfig& config, const GasState& gas) {
  const bool single = config.light.lines.size() == 1;
  const LightSpec light =
      single ? single_relative_line(config.light, 0) : config.light;
  const std::string reference =
      single ? line_reference(config.light, 0) : "absolute";

  const LineList list =
      exact::exact_line_list(config.trap, light, config.n_atoms);
  Eigen::ArrayXd grid;
  if (config.grid.automatic) {
    // shared grid: union of the line span (+- 6 kernel widths) and the
    // Thomas-Fermi support
    const Eigen::ArrayXd line_grid =
        exact::default_line_grid(list, config.broaden.width);
    const Eigen::ArrayXd tf_grid =
        tf::default_grid_T0(config.trap, light, config.n_atoms);
    const double lo = std::min(line_grid[0], tf_grid[0]);
    const double hi = std::max(line_grid[line_grid.size() - 1],
                               tf_grid[tf_grid.size() - 1]);
    grid = Eigen::ArrayXd::LinSpaced(line_grid.size(), lo, hi);
  } else {
    grid = manual_grid(config.grid);
  }

  Spectrum exact_spectrum = exact::broaden(list, config.broaden.kernel,
                                           config.broaden.width, grid);
  Spectrum tf_spectrum =
      tf::tf_lineshape_T0(grid, config.trap, light, config.n_atoms);

  Spectrum diff;
  diff.grid = grid;
  const double exact_peak = exact_spectrum.intensity.maxCoeff();
  const double tf_peak = tf_spectrum.intensity.maxCoeff();
  diff.intensity = exact_spectrum.intensity / exact_peak -
                   tf_spectrum.intensity / tf_peak;
  diff.meta.set("normalization", "difference_of_peak_normalized");
  diff.meta.set_num("exact_peak", exact_peak);
  diff.meta.set_num("tf_peak", tf_peak);

  ScenarioResult result;
  for (auto& [name, spectrum] :
       std::initializer_list<std::pair<const char*, Spectrum*>>{
           {"exact", &exact_spectrum}, {"tf", &tf_spectrum}, {"diff", &diff}}) {
    stamp_common(*spectrum, config, gas, reference);
    result.spectra.push_back({name, std::move(*spectrum)});
  }
  if (config.emit_lines) result.line_list = list;
  return result;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
  io::validate_config(config);
  config.trap.validate();
  config.light.validate();

  const double fermi =
      core::fermi_energy(config.n_atoms, config.trap.lambda_y,
                         config.trap.lambda_z);
  const double temperature = config.temperature_in_trap_units(fermi);
  const GasState gas =
      core::make_gas_state(config.trap, config.n_atoms, temperature);

  if (config.route == Route::compare) return run_compare(config, gas);

  auto run_single = [&](const LightSpec& light) {
    switch (config.route) {
      case Route::exact: return run_exact_single(config, gas, light);
      case Route::tf_zero: return run_tf_zero_single(config, gas, light);
      case Route::tf_finite: return run_tf_finite_single(config, gas, light);
      case Route::mc_oracle: return run_mc_single(config, gas, light);
      case Route::compare: break;
    }
    throw Error("run_scenario: unreachable route");
  };

  ScenarioResult result;
  const size_t n_lines = config.light.lines.size();
  if (n_lines == 1 || config.route == Route::mc_oracle) {
    const bool relative = n_lines == 1;
    const LightSpec light = relative ? single_relative_line(config.light, 0)
                                     : config.light;
    Spectrum spectrum = run_single(light);
    stamp_common(spectrum, config, gas,
                 relative ? line_reference(config.light, 0) : "absolute");
    result.spectra.push_back({"spectrum", std::move(spectrum)});
  } else {
    for (size_t i = 0; i < n_lines; ++i) {
      Spectrum spectrum = run_single(single_relative_line(config.light, i));
      stamp_common(spectrum, config, gas, line_reference(config.light, i));
      result.spectra.push_back({"ex" + std::to_string(i),
                                std::move(spectrum)});
    }
    Spectrum sum = run_single(config.light);
    stamp_common(sum, config, gas, "absolute");
    result.spectra.push_back({"sum", std::move(sum)});
  }

  if (config.route == Route::exact && config.emit_lines)
    result.line_list =
        exact::exact_line_list(config.trap, config.light, config.n_atoms);
  return result;
}

std::vector<std::pair<std::string, io::ScenarioConfig>> preset_scenarios(
    const std::string& name) {
  auto base = [](Route route, long n_atoms, double lambda, double alpha) {
    ScenarioConfig config;
    config.route = route;
    config.n_atoms = n_atoms;
    config.trap.lambda_y = lambda;
    config.trap.lambda_z = lambda;
    config.light.alpha = alpha;
    config.light.lines = {LightSpec::Line{0.0, 1.0}};
    config.temperature_value = 0.0;
    config.temperature_unit = TempUnit::trap_quantum;
    return config;
  };

  std::vector<std::pair<std::string, ScenarioConfig>> list;
  if (name == "fig1") {
    for (double lambda : {1.0, 5.0, 20.0}) {
      ScenarioConfig config = base(Route::exact, 20, lambda, 8.0);
      config.emit_lines = true;
      list.emplace_back(
          "fig1_lambda" + std::to_string(static_cast<int>(lambda)), config);
    }
  } else if (name == "fig2") {
    list.emplace_back("fig2", base(Route::compare, 35, 1.0, 9.0));
  } else if (name == "fig3") {
    list.emplace_back("fig3", base(Route::compare, 196, 5.0, 9.0));
  } else if (name == "fig4") {
    for (const char* t : {"0.10", "0.25", "0.50"}) {
      ScenarioConfig config = base(Route::tf_finite, 10667, 1.0, 9.0);
      config.temperature_value = std::stod(t);
      config.temperature_unit = TempUnit::fermi_energy;
      list.emplace_back(std::string("fig4_T") + t + "EF", config);
    }
  } else if (name == "fig5") {
    for (const char* ratio : {"0.80", "1.00", "1.20"}) {
      ScenarioConfig config = base(Route::tf_finite, 10667, 1.0, 9.0);
      config.temperature_value = 0.25;
      config.temperature_unit = TempUnit::fermi_energy;
      config.trap.omega_ratio = std::stod(ratio);
      list.emplace_back(std::string("fig5_ratio") + ratio, config);
    }
  } else {
    throw ConfigError("preset", "unknown preset: '" + name +
                                    "' (fig1, fig2, fig3, fig4, fig5)");
  }
  return list;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig1", "fig2", "fig3",
                                                 "fig4", "fig5"};
  return names;
}

}  // namespace fermispec::cli
