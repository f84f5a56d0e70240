#include "omx/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "omx/error.hpp"
#include "omx/parallel.hpp"

namespace omx {
namespace {

// Minimum neighbour difference for a sample to count as an extremum; keeps
// rounding noise on flat stretches out of the peak lists.
constexpr double kNoiseFloorFactor = 1e-3;

double parabola_vertex(double xa, double ya, double xb, double yb, double xc, double yc) {
  const double num = (xb - xa) * (xb - xa) * (yb - yc) - (xb - xc) * (xb - xc) * (yb - ya);
  const double den = (xb - xa) * (yb - yc) - (xb - xc) * (yb - ya);
  if (den == 0.0) return xb;
  return std::clamp(xb - 0.5 * num / den, xa, xc);
}

struct Crossing {
  double x;
  double slope;
};

// Walks from `from` in direction `step` until values drop to `level`.
std::optional<Crossing> half_crossing(std::span<const double> x, std::span<const double> y,
                                      std::size_t from, std::size_t lo, std::size_t hi,
                                      double level, int step) {
  std::size_t j = from;
  while (true) {
    if (step < 0 ? j == lo : j == hi) return std::nullopt;
    const std::size_t k = step < 0 ? j - 1 : j + 1;
    if (y[k] <= level) {
      const double frac = (y[j] - level) / (y[j] - y[k]);
      Crossing c;
      c.x = x[j] + frac * (x[k] - x[j]);
      c.slope = (y[k] - y[j]) / (x[k] - x[j]);
      return c;
    }
    j = k;
  }
}

}  // namespace

std::vector<double> make_grid(const GridSpec& spec, double gamma_m) {
  if (spec.points < 2) throw InvalidParams("grid needs at least 2 points");
  if (!(spec.stop > spec.start)) throw InvalidParams("grid stop must exceed start");
  const double step = (spec.stop - spec.start) / static_cast<double>(spec.points - 1);
  std::vector<double> grid;
  grid.reserve(spec.points);
  for (std::size_t i = 0; i < spec.points; ++i) grid.push_back(spec.start + step * static_cast<double>(i));
  grid.back() = spec.stop;

  const double half = spec.refine_halfwidth_gammas * gamma_m;
  if (spec.refine_near_mechanical && half > 0.0 && spec.refine_density > 1) {
    const double fine = step / spec.refine_density;
    for (double centre : {-kOmegaM, kOmegaM}) {
      const double lo = std::max(spec.start, centre - half);
      const double hi = std::min(spec.stop, centre + half);
      for (double x = lo; x <= hi; x += fine) grid.push_back(x);
    }
    std::sort(grid.begin(), grid.end());
    const double tiny = 1e-9 * fine;
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [tiny](double a, double b) { return std::abs(a - b) <= tiny; }),
               grid.end());
  }
  return grid;
}

SpectralFeatures extract_features(std::span<const double> x, std::span<const double> y,
                                  const FeatureWindow& window, double flat_tolerance) {
  if (x.size() != y.size()) throw InvalidParams("grid and values differ in length");
  SpectralFeatures out;
  const double lo_x = window.center - window.half_width;
  const double hi_x = window.center + window.half_width;
  const auto first = std::lower_bound(x.begin(), x.end(), lo_x);
  const auto last = std::upper_bound(x.begin(), x.end(), hi_x);
  if (last - first < 3) return out;
  const auto lo = static_cast<std::size_t>(first - x.begin());
  const auto hi = static_cast<std::size_t>(last - x.begin()) - 1;

  const auto [min_it, max_it] = std::minmax_element(y.begin() + lo, y.begin() + hi + 1);
  out.contrast = *max_it - *min_it;
  out.contrast_normalized = (*max_it + *min_it) > 0.0 ? out.contrast / (*max_it + *min_it) : 0.0;
  if (out.contrast <= flat_tolerance) return out;

  const double noise = kNoiseFloorFactor * flat_tolerance;
  std::optional<std::size_t> principal;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const double dl = y[i] - y[i - 1];
    const double dr = y[i] - y[i + 1];
    if (std::max(std::abs(dl), std::abs(dr)) <= noise) continue;
    if (dl > 0.0 && dr >= 0.0) {
      out.peak_positions.push_back(parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]));
      if (!principal || y[i] > y[*principal]) principal = i;
    } else if (dl < 0.0 && dr <= 0.0) {
      out.dip_positions.push_back(parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]));
    }
  }
  if (!principal) return out;

  const std::size_t ip = *principal;
  out.principal_peak = parabola_vertex(x[ip - 1], y[ip - 1], x[ip], y[ip], x[ip + 1], y[ip + 1]);
  out.peak_value = y[ip];
  const double left_min = *std::min_element(y.begin() + lo, y.begin() + ip + 1);
  const double right_min = *std::min_element(y.begin() + ip, y.begin() + hi + 1);
  out.prominence = y[ip] - std::max(left_min, right_min);
  const double level = y[ip] - 0.5 * out.prominence;
  const auto left = half_crossing(x, y, ip, lo, hi, level, -1);
  const auto right = half_crossing(x, y, ip, lo, hi, level, +1);
  if (left && right) {
    out.window_width = right->x - left->x;
    const double sl = std::abs(left->slope);
    const double sr = std::abs(right->slope);
    if (sl + sr > 0.0) out.asymmetry = (sl - sr) / (sl + sr);
  }
  return out;
}

std::vector<double> Spectrum::transmission_values() const {
  std::vector<double> t;
  t.reserve(responses.size());
  for (const auto& r : responses) t.push_back(r.t);
  return t;
}

std::vector<double> Spectrum::evaluated_grid() const {
  std::vector<double> g;
  g.reserve(responses.size());
  for (const auto& r : responses) g.push_back(r.delta_p);
  return g;
}

Spectrum spectrum(const SystemParams& params, const OperatingPoint& op, std::span<const double> grid,
                  const SpectrumOptions& options) {
  require_valid(params);
  if (grid.size() < 16) throw InvalidParams("spectrum grid needs at least 16 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidParams("spectrum grid must be strictly increasing");
  }

  Spectrum s;
  s.grid.assign(grid.begin(), grid.end());

  // Resolution check around the mechanical resonances.
  if (params.gamma_m > 0.0) {
    for (double centre : {-kOmegaM, kOmegaM}) {
      if (centre < grid.front() || centre > grid.back()) continue;
      double widest = 0.0;
      for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] >= centre - params.gamma_m && grid[i - 1] <= centre + params.gamma_m) {
          widest = std::max(widest, grid[i] - grid[i - 1]);
        }
      }
      if (widest > params.gamma_m / 4.0) {
        s.warnings.push_back("grid step " + std::to_string(widest) + " exceeds gamma_m/4 near delta_p = " +
                             std::to_string(centre));
      }
    }
  }

  std::vector<std::optional<ProbeResponse>> slots(grid.size());
  std::vector<std::optional<double>> eit_slots(options.with_eit ? grid.size() : 0);
  std::vector<std::string> messages(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    try {
      slots[i] = probe_amplitude(params, op, grid[i]);
      if (options.with_eit) eit_slots[i] = eit_model_response(params, op.n, grid[i]).t;
    } catch (const NumericalError& e) {
      messages[i] = e.what();
    }
  });

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (slots[i]) {
      s.responses.push_back(*slots[i]);
      if (options.with_eit) s.t_eit.push_back(eit_slots[i].value_or(std::numeric_limits<double>::quiet_NaN()));
    } else {
      s.errors.push_back({grid[i], messages[i]});
    }
  }
  const auto xs = s.evaluated_grid();
  const auto ts = s.transmission_values();
  s.features = extract_features(xs, ts, options.window);
  return s;
}

}  // namespace omx
