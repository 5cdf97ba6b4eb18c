#include "fermispec/spectrum_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace fermispec::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_strict_double(const std::string& token, const char* what) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE)
    throw Error(std::string("spectrum parse: bad ") + what + " '" + token +
                "'");
  return value;
}

}  // namespace

const char* format_name(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat format_from_name(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw DomainError("unknown output format: " + name);
}

std::string to_csv(const Spectrum& spectrum) {
  std::ostringstream out;
  for (const auto& [key, value] : spectrum.meta.entries)
    out << "# " << key << " = " << value << "\n";
  out << "detuning,intensity\n";
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    out << format_double(spectrum.grid[i]) << ","
        << format_double(spectrum.intensity[i]) << "\n";
  return out.str();
}

std::string to_json(const Spectrum& spectrum) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : spectrum.meta.entries) meta[key] = value;
  j["meta"] = std::move(meta);
  j["detuning"] = std::vector<double>(
      spectrum.grid.data(), spectrum.grid.data() + spectrum.grid.size());
  j["intensity"] =
      std::vector<double>(spectrum.intensity.data(),
                          spectrum.intensity.data() + spectrum.intensity.size());
  return j.dump(2) + "\n";
}

std::string serialize_spectrum(const Spectrum& spectrum, OutputFormat format) {
  return format == OutputFormat::csv ? to_csv(spectrum) : to_json(spectrum);
}

Spectrum from_csv(const std::string& text) {
  Spectrum spectrum;
  std::vector<double> grid, intensity;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(line.substr(1, eq - 1));
      const std::string value = trim(line.substr(eq + 1));
      if (!key.empty()) spectrum.meta.set(key, value);
      continue;
    }
    if (line == "detuning,intensity") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw Error("spectrum parse: malformed row '" + line + "'");
    grid.push_back(
        parse_strict_double(trim(line.substr(0, comma)), "detuning"));
    intensity.push_back(
        parse_strict_double(trim(line.substr(comma + 1)), "intensity"));
  }
  spectrum.grid =
      Eigen::Map<Eigen::ArrayXd>(grid.data(), static_cast<Eigen::Index>(grid.size()));
  spectrum.intensity = Eigen::Map<Eigen::ArrayXd>(
      intensity.data(), static_cast<Eigen::Index>(intensity.size()));
  return spectrum;
}

Spectrum from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("spectrum parse: ") + e.what());
  }
  Spectrum spectrum;
  if (j.contains("meta"))
    for (const auto& [key, value] : j.at("meta").items())
      spectrum.meta.set(key, value.get<std::string>());
  const auto grid = j.at("detuning").get<std::vector<double>>();
  const auto intensity = j.at("intensity").get<std::vector<double>>();
  if (grid.size() != intensity.size())
    throw Error("spectrum parse: detuning/intensity length mismatch");
  spectrum.grid = Eigen::Map<const Eigen::ArrayXd>(
      grid.data(), static_cast<Eigen::Index>(grid.size()));
  spectrum.intensity = Eigen::Map<const Eigen::ArrayXd>(
      intensity.data(), static_cast<Eigen::Index>(intensity.size()));
  return spectrum;
}

Spectrum parse_spectrum(const std::string& text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    return c == '{' ? from_json(text) : from_csv(text);
  }
  throw Error("spectrum parse: empty input");
}

void write_spectrum_file(const std::string& path, const Spectrum& spectrum,
                         OutputFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << serialize_spectrum(spectrum, format);
  if (!out) throw Error("write failed: " + path);
}

Spectrum read_spectrum_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spectrum(buf.str());
}

std::string line_list_to_csv(const LineList& lines) {
  std::ostringstream out;
  out << "# total_weight = " << format_double(lines.total_weight) << "\n";
  out << "# truncated_weight = " << format_double(lines.truncated_weight)
      << "\n";
  out << "# m_max = " << lines.m_max << "\n";
  out << "m,detuning,weight\n";
  for (const LineList::Line& line : lines.lines)
    out << line.m << "," << format_double(line.detuning) << ","
        << format_double(line.weight) << "\n";
  return out.str();
}

}  // namespace fermispec::io
