#pragma once

#include <string>
#include <vector>

#include "omx/cli/table.hpp"

namespace omx::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  ///< NaN breaks the line
  std::string color = "#1f77b4";
  bool dashed = false;
  bool markers = false;  ///< draw points instead of a polyline
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Standalone SVG 1.1 document, 800x600, six ticks per axis. Output depends
/// only on the input; empty data yields axes over [0, 1].
[[nodiscard]] std::string render_svg(const PlotSpec& spec);

/// Chooses a layout from the column names written by the commands: branch
/// columns (n1.., stable1..), hysteresis paths, spectra (T, T_eit), maps
/// (root_count) or, failing that, every numeric column against the first.
[[nodiscard]] PlotSpec plot_from_table(const Table& table);

}  // namespace omx::cli
