// fermispec command line: computes absorption spectra of a harmonically
// trapped ideal Fermi gas via exact level summation, the Thomas-Fermi
// closed forms, the finite-temperature quadrature or a Monte Carlo sampler.
//
// Exit codes: 0 success, 2 configuration error, 3 unsupported capability,
// 4 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fermispec/config.hpp"
#include "fermispec/scenarios.hpp"
#include "fermispec/spectrum_io.hpp"
#include "fermispec/version.hpp"

namespace {

namespace fs = std::filesystem;
using fermispec::cli::NamedSpectrum;
using fermispec::cli::ScenarioResult;
using fermispec::io::OutputFormat;
using fermispec::io::ScenarioConfig;

struct Overrides {
  std::string out;
  std::string format;
  std::string grid;
  std::string broaden;
  std::optional<std::uint64_t> seed;
};

void apply_overrides(ScenarioConfig& config, const Overrides& overrides) {
  if (!overrides.format.empty()) {
    try {
      config.format = fermispec::io::format_from_name(overrides.format);
    } catch (const fermispec::DomainError& e) {
      throw fermispec::ConfigError("format", e.what());
    }
  }
  if (!overrides.grid.empty())
    config.grid = fermispec::io::parse_grid_spec(overrides.grid);
  if (!overrides.broaden.empty())
    config.broaden = fermispec::io::parse_broaden_spec(overrides.broaden);
  if (overrides.seed) {
    if (config.route != fermispec::io::Route::mc_oracle)
      throw fermispec::ConfigError("seed",
                                   "--seed applies to route = mc_oracle only");
    config.mc->seed = *overrides.seed;
  }
}

std::string strip_known_extension(const std::string& path) {
  const fs::path p(path);
  const std::string ext = p.extension().string();
  if (ext == ".csv" || ext == ".json") return (p.parent_path() / p.stem()).string();
  return path;
}

std::vector<std::string> write_result(const ScenarioResult& result,
                                      const std::string& base,
                                      OutputFormat format, bool emit_lines) {
  const std::string ext =
      std::string(".") + fermispec::io::format_name(format);
  std::vector<std::string> written;
  const fs::path parent = fs::path(base).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  for (const NamedSpectrum& named : result.spectra) {
    const std::string path = result.spectra.size() == 1
                                 ? base + ext
                                 : base + "_" + named.name + ext;
    fermispec::io::write_spectrum_file(path, named.spectrum, format);
    written.push_back(path);
  }
  if (emit_lines && result.line_list) {
    const std::string path = base + "_lines.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fermispec::Error("cannot open for writing: " + path);
    out << fermispec::io::line_list_to_csv(*result.line_list);
    written.push_back(path);
  }
  return written;
}

int run_command(const std::string& config_path, const Overrides& overrides) {
  ScenarioConfig config = fermispec::io::load_config_file(config_path);
  apply_overrides(config, overrides);
  if (!overrides.out.empty()) config.out_path = overrides.out;
  fermispec::io::validate_config(config);

  const ScenarioResult result = fermispec::cli::run_scenario(config);
  std::string base = config.out_path.empty()
                         ? fs::path(config_path).stem().string()
                         : strip_known_extension(config.out_path);
  for (const std::string& path :
       write_result(result, base, config.format, config.emit_lines))
    std::cout << path << "\n";
  return 0;
}

int preset_command(const std::string& name, const Overrides& overrides) {
  auto scenarios = fermispec::cli::preset_scenarios(name);
  const fs::path out_dir = overrides.out.empty() ? fs::path(".")
                                                 : fs::path(overrides.out);
  fs::create_directories(out_dir);
  for (auto& [variant, config] : scenarios) {
    apply_overrides(config, overrides);
    fermispec::io::validate_config(config);
    const ScenarioResult result = fermispec::cli::run_scenario(config);
    const std::string base = (out_dir / variant).string();
    for (const std::string& path :
         write_result(result, base, config.format, config.emit_lines))
      std::cout << path << "\n";
  }
  return 0;
}

int validate_command(const std::string& config_path) {
  const ScenarioConfig config = fermispec::io::load_config_file(config_path);
  fermispec::io::validate_config(config);
  std::cout << config_path << ": ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fermispec " FERMISPEC_VERSION
      " - absorption spectra of a harmonically trapped ideal Fermi gas"};
  app.require_subcommand(1);

  Overrides overrides;

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "run a scenario config file");
  run->add_option("config", run_config, "scenario config file")->required();

  std::string preset_name;
  CLI::App* preset = app.add_subcommand(
      "preset", "run a built-in figure scenario (fig1..fig5)");
  preset->add_option("name", preset_name, "preset name")->required();

  std::string validate_config_path;
  CLI::App* validate =
      app.add_subcommand("validate", "parse and validate a config file");
  validate->add_option("config", validate_config_path, "scenario config file")
      ->required();

  for (CLI::App* cmd : {run, preset}) {
    cmd->add_option("--out", overrides.out,
                    "output path (run) or directory (preset)");
    cmd->add_option("--format", overrides.format, "output format: csv|json");
    cmd->add_option("--grid", overrides.grid, "detuning grid min:max:points");
    cmd->add_option("--broaden", overrides.broaden,
                    "line smoothing kernel:width");
    cmd->add_option_function<std::string>(
        "--seed",
        [&overrides](const std::string& value) {
          try {
            size_t used = 0;
            overrides.seed = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
          } catch (const std::exception&) {
            throw fermispec::ConfigError("seed",
                                         "not an unsigned integer: '" +
                                             value + "'");
          }
        },
        "Monte Carlo seed (mc_oracle)");
  }

  try {
    app.parse(argc, argv);
    if (run->parsed()) return run_command(run_config, overrides);
    if (preset->parsed()) return preset_command(preset_name, overrides);
    return validate_command(validate_config_path);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fermispec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fermispec::CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  }
}
