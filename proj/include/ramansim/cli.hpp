#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ramansim/config.hpp"

namespace ramansim {

inline constexpr const char* kLibraryVersion = "0.1.0";

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Header row plus data rows, comma separated, LF line endings.
std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

const std::vector<std::string>& command_names();

/// Runs one command and writes <out_base>.csv and <out_base>.json.
/// Returns 0 on success; on failure writes a diagnostic to `err` and returns nonzero.
int run_command(const std::string& cmd, const LoadedConfig& cfg, const std::filesystem::path& out_base,
                std::ostream& err);

}  // namespace ramansim
