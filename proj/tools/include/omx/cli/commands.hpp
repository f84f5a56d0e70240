#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "omx/cli/config.hpp"
#include "omx/cli/table.hpp"

namespace omx::cli {

enum ExitCode : int { ok = 0, usage = 1, invalid_config = 2, numerical_failure = 3, io_failure = 4 };

[[nodiscard]] std::string steady_json(const RunConfig& cfg);
[[nodiscard]] Table sweep_table(const RunConfig& cfg);
[[nodiscard]] Table hysteresis_table(const RunConfig& cfg);
/// Fills `features_json` with the extracted spectral features.
[[nodiscard]] Table spectrum_table(const RunConfig& cfg, std::string& features_json);
[[nodiscard]] Table map_table(const RunConfig& cfg);

/// Full command line (without the program name). Maps exceptions to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omx::cli
