#pragma once

#include <string>

#include "fermispec/types.hpp"

// Spectrum serialization. CSV carries the metadata as '# key = value' header
// lines followed by detuning,intensity rows; JSON carries a metadata object
// plus parallel arrays. Doubles are written with 17 significant digits so a
// parse of the serialized form reproduces the numeric payload exactly.

namespace fermispec::io {

enum class OutputFormat { csv, json };

const char* format_name(OutputFormat format);
OutputFormat format_from_name(const std::string& name);

std::string to_csv(const Spectrum& spectrum);
std::string to_json(const Spectrum& spectrum);
std::string serialize_spectrum(const Spectrum& spectrum, OutputFormat format);

Spectrum from_csv(const std::string& text);
Spectrum from_json(const std::string& text);
/// Sniffs the format (JSON object vs CSV) and parses.
Spectrum parse_spectrum(const std::string& text);

void write_spectrum_file(const std::string& path, const Spectrum& spectrum,
                         OutputFormat format);
Spectrum read_spectrum_file(const std::string& path);

/// Line-list sidecar: '# key = value' headers plus m,detuning,weight rows.
std::string line_list_to_csv(const LineList& lines);

}  // namespace fermispec::io
