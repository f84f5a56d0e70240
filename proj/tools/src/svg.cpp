#include "omx/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace omx::cli {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 20.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;
constexpr int kTicks = 6;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Span {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      const double pad = lo == 0.0 ? 0.5 : 0.1 * std::abs(lo);
      lo -= pad;
      hi += pad;
    } else {
      const double pad = 0.04 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
  }
};

std::string tick_label(double v, double span) {
  if (std::abs(v) < 1e-12 * span) v = 0.0;
  return fmt("%.4g", v);
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  Span xs;
  Span ys;
  for (const auto& s : spec.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
        xs.add(s.x[i]);
        ys.add(s.y[i]);
      }
    }
  }
  xs.finish();
  ys.finish();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xs.lo) / (xs.hi - xs.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - ys.lo) / (ys.hi - ys.lo) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    out += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           escape(spec.title) + "</text>\n";
  }

  // Frame and ticks.
  out += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  out += "<rect x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", kTop) + "\" width=\"" + fmt("%.2f", pw) +
         "\" height=\"" + fmt("%.2f", ph) + "\"/>\n";
  for (int i = 0; i < kTicks; ++i) {
    const double fx = kLeft + pw * i / (kTicks - 1);
    const double fy = kTop + ph - ph * i / (kTicks - 1);
    out += "<line x1=\"" + fmt("%.2f", fx) + "\" y1=\"" + fmt("%.2f", kTop + ph) + "\" x2=\"" + fmt("%.2f", fx) +
           "\" y2=\"" + fmt("%.2f", kTop + ph + 6) + "\"/>\n";
    out += "<line x1=\"" + fmt("%.2f", kLeft - 6) + "\" y1=\"" + fmt("%.2f", fy) + "\" x2=\"" + fmt("%.2f", kLeft) +
           "\" y2=\"" + fmt("%.2f", fy) + "\"/>\n";
  }
  out += "</g>\n";
  out += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int i = 0; i < kTicks; ++i) {
    const double vx = xs.lo + (xs.hi - xs.lo) * i / (kTicks - 1);
    const double vy = ys.lo + (ys.hi - ys.lo) * i / (kTicks - 1);
    const double fx = kLeft + pw * i / (kTicks - 1);
    const double fy = kTop + ph - ph * i / (kTicks - 1);
    out += "<text x=\"" + fmt("%.2f", fx) + "\" y=\"" + fmt("%.2f", kTop + ph + 22) +
           "\" text-anchor=\"middle\">" + tick_label(vx, xs.hi - xs.lo) + "</text>\n";
    out += "<text x=\"" + fmt("%.2f", kLeft - 10) + "\" y=\"" + fmt("%.2f", fy + 4) + "\" text-anchor=\"end\">" +
           tick_label(vy, ys.hi - ys.lo) + "</text>\n";
  }
  out += "<text x=\"" + fmt("%.2f", kLeft + pw / 2) + "\" y=\"" + fmt("%.2f", kHeight - 20) +
         "\" text-anchor=\"middle\" font-size=\"14\">" + escape(spec.x_label) + "</text>\n";
  out += "<text x=\"24\" y=\"" + fmt("%.2f", kTop + ph / 2) + "\" text-anchor=\"middle\" font-size=\"14\" "
         "transform=\"rotate(-90 24 " + fmt("%.2f", kTop + ph / 2) + ")\">" + escape(spec.y_label) + "</text>\n";
  out += "</g>\n";

  // Data.
  out += "<g fill=\"none\" stroke-width=\"1.5\">\n";
  for (const auto& s : spec.series) {
    const std::size_t count = std::min(s.x.size(), s.y.size());
    if (s.markers) {
      for (std::size_t i = 0; i < count; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        out += "<circle cx=\"" + fmt("%.2f", px(s.x[i])) + "\" cy=\"" + fmt("%.2f", py(s.y[i])) +
               "\" r=\"2\" fill=\"" + s.color + "\" stroke=\"none\"/>\n";
      }
      continue;
    }
    std::string points;
    auto flush = [&] {
      if (points.empty()) return;
      out += "<polyline stroke=\"" + s.color + "\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") +
             " points=\"" + points + "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < count; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fmt("%.2f", px(s.x[i])) + "," + fmt("%.2f", py(s.y[i]));
    }
    flush();
  }
  out += "</g>\n";

  // Legend.
  out += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = kTop + 18;
  for (const auto& s : spec.series) {
    if (s.label.empty()) continue;
    const double lx = kLeft + pw - 150;
    out += "<line x1=\"" + fmt("%.2f", lx) + "\" y1=\"" + fmt("%.2f", ly - 4) + "\" x2=\"" + fmt("%.2f", lx + 24) +
           "\" y2=\"" + fmt("%.2f", ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    out += "<text x=\"" + fmt("%.2f", lx + 30) + "\" y=\"" + fmt("%.2f", ly) + "\">" + escape(s.label) + "</text>\n";
    ly += 16;
  }
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

namespace {

std::string axis_label(const std::string& column) {
  if (column == "e_l") return "E_l (units of ω_m)";
  if (column == "delta_p") return "Δp (units of ω_m)";
  if (column == "delta_c") return "Δc (units of ω_m)";
  if (column == "delta_d") return "Δd (units of ω_m)";
  return column + " (units of ω_m)";
}

std::vector<double> column_values(const Table& t, std::size_t col) {
  std::vector<double> v;
  v.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    v.push_back(t.number(r, col).value_or(std::numeric_limits<double>::quiet_NaN()));
  }
  return v;
}

// One series per run of equal stability; unstable runs are dashed. Adjacent
// runs share their boundary point so the curve stays connected.
void add_branch(PlotSpec& spec, const Table& t, std::size_t ncol, std::optional<std::size_t> scol,
                const std::string& label, const std::string& color) {
  const auto x = column_values(t, 0);
  const auto n = column_values(t, ncol);
  Series current;
  bool labelled = false;
  std::optional<bool> current_stable;
  auto finish = [&] {
    if (current.x.empty()) return;
    if (!labelled && current_stable.value_or(true)) {
      current.label = label;
      labelled = true;
    }
    spec.series.push_back(std::move(current));
    current = Series{};
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (!std::isfinite(n[r])) {
      if (!current.x.empty()) {
        current.x.push_back(nan);
        current.y.push_back(nan);
      }
      continue;
    }
    const bool stable = !scol || t.number(r, *scol).value_or(1.0) != 0.0;
    if (current_stable && *current_stable != stable) {
      const double lx = current.x.back();
      const double ly = current.y.back();
      finish();
      if (std::isfinite(lx)) {
        current.x.push_back(lx);
        current.y.push_back(ly);
      }
    }
    current_stable = stable;
    current.color = color;
    current.dashed = !stable;
    current.x.push_back(x[r]);
    current.y.push_back(n[r]);
  }
  finish();
}

}  // namespace

PlotSpec plot_from_table(const Table& table) {
  PlotSpec spec;
  if (table.header.empty()) return spec;
  spec.x_label = axis_label(table.header[0]);

  if (table.column("root_count") && table.header.size() >= 2) {
    spec.title = "bistability map";
    spec.y_label = axis_label(table.header[1]);
    Series pred{"predicate true", {}, {}, kPalette[0], false, true};
    Series knee{"three roots at knee midpoint", {}, {}, kPalette[1], false, true};
    const auto pcol = table.column("predicate");
    const auto kcol = table.column("knee_root_count");
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const double x = table.number(r, 0).value_or(NAN);
      const double y = table.number(r, 1).value_or(NAN);
      if (pcol && table.number(r, *pcol).value_or(0.0) != 0.0) {
        pred.x.push_back(x);
        pred.y.push_back(y);
      }
      if (kcol && table.number(r, *kcol).value_or(0.0) == 3.0) {
        knee.x.push_back(x);
        knee.y.push_back(y);
      }
    }
    spec.series.push_back(std::move(pred));
    spec.series.push_back(std::move(knee));
    return spec;
  }

  if (const auto tcol = table.column("T")) {
    spec.title = "probe transmission";
    spec.y_label = "T";
    spec.series.push_back({"T", table.header.empty() ? std::vector<double>{} : column_values(table, 0),
                           column_values(table, *tcol), kPalette[0], false, false});
    if (const auto ecol = table.column("T_eit")) {
      spec.series.push_back({"T (two-mode model)", column_values(table, 0), column_values(table, *ecol),
                             kPalette[1], true, false});
    }
    return spec;
  }

  if (table.column("n1")) {
    const bool hysteresis = table.column("up_path").has_value();
    spec.title = hysteresis ? "hysteresis" : "steady-state photon number";
    spec.y_label = "n = |a_s|^2";
    for (int k = 1; k <= 3; ++k) {
      const auto ncol = table.column("n" + std::to_string(k));
      if (!ncol) continue;
      const auto scol = table.column("stable" + std::to_string(k));
      add_branch(spec, table, *ncol, scol, hysteresis ? "" : "branch " + std::to_string(k),
                 hysteresis ? "#b0b0b0" : kPalette[(k - 1) % 6]);
    }
    if (hysteresis) {
      spec.series.push_back({"up sweep", column_values(table, 0), column_values(table, *table.column("up_path")),
                             kPalette[0], false, false});
      if (const auto dcol = table.column("down_path")) {
        spec.series.push_back({"down sweep", column_values(table, 0), column_values(table, *dcol), kPalette[1],
                               true, false});
      }
    }
    return spec;
  }

  spec.y_label = table.header.size() > 1 ? table.header[1] : "";
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    spec.series.push_back({table.header[c], column_values(table, 0), column_values(table, c),
                           kPalette[(c - 1) % 6], false, false});
  }
  return spec;
}

}  // namespace omx::cli
