#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "omx/params.hpp"
#include "omx/spectrum.hpp"
#include "omx/sweep.hpp"

namespace omx::cli {

struct SweepConfig {
  std::string param = "delta_c";
  double start = -2.0;
  double stop = 2.0;
  std::size_t points = 801;
  std::string tie = "none";        ///< none | equal | opposite (delta_c sweeps only)
  std::string direction = "both";  ///< up | down | both (hysteresis only)
};

struct SpectrumConfig {
  GridSpec grid;
  std::optional<double> n;  ///< operating photon number; highest stable branch when absent
  double window_center = -1.0;
  double window_half_width = 0.5;
  bool eit = false;
};

struct AxisConfig {
  std::string param;
  double start = 0.0;
  double stop = 1.0;
  std::size_t points = 101;
};

struct MapConfig {
  AxisConfig x{"kappa", 0.0, 0.2, 101};
  AxisConfig y{"delta_c", -2.0, 2.0, 101};
};

struct OutputConfig {
  std::string format = "csv";  ///< csv | json
  std::string path;            ///< stdout when empty
  std::string plot;            ///< optional SVG path
  std::string features;        ///< spectrum features JSON; defaults to <path>.features.json
};

/// Everything a command needs. Frequencies and rates are in units of w_m.
struct RunConfig {
  SystemParams params;
  SweepConfig sweep;
  SpectrumConfig spectrum;
  MapConfig map;
  OutputConfig output;
};

/// Strict parse: unknown keys and wrongly typed values throw ConfigError
/// naming the dotted key path.
[[nodiscard]] RunConfig parse_config(const nlohmann::json& doc);

/// Reads a JSON file; a missing file is an IoError, bad JSON a ConfigError.
[[nodiscard]] nlohmann::json load_config_json(const std::string& path);

/// Applies "section.key=value" to the document. The value is read as JSON
/// when it parses as JSON and as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

[[nodiscard]] nlohmann::json params_to_json(const SystemParams& p);

}  // namespace omx::cli
