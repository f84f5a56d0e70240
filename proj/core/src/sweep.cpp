#include "omx/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "omx/error.hpp"
#include "omx/parallel.hpp"

namespace omx {
namespace {

struct ParamName {
  SweptParam param;
  const char* name;
};

constexpr ParamName kParamNames[] = {
    {SweptParam::delta_c, "delta_c"}, {SweptParam::delta_d, "delta_d"}, {SweptParam::eta, "eta"},
    {SweptParam::e_l, "e_l"},         {SweptParam::kappa, "kappa"},     {SweptParam::chi, "chi"},
    {SweptParam::g, "g"},             {SweptParam::gamma_a, "gamma_a"},
};

std::vector<double> stable_photon_numbers(const RootSet& set) {
  std::vector<double> out;
  for (const auto& b : set.branches) {
    if (b.stability == Stability::stable) out.push_back(b.n);
  }
  if (out.empty()) {
    for (const auto& b : set.branches) out.push_back(b.n);
  }
  return out;
}

bool unstable_between(const RootSet& set, double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return std::any_of(set.branches.begin(), set.branches.end(), [&](const SteadyStateBranch& br) {
    return br.stability == Stability::unstable && br.n > lo && br.n < hi;
  });
}

// Follows the stable branches through root_sets in the given order.
std::vector<double> follow(const std::vector<RootSet>& sets, bool upward, std::vector<Jump>& jumps) {
  const std::size_t count = sets.size();
  std::vector<double> path(count, std::numeric_limits<double>::quiet_NaN());
  if (count == 0) return path;
  const SweepDirection dir = upward ? SweepDirection::up : SweepDirection::down;

  std::optional<double> previous;
  for (std::size_t step = 0; step < count; ++step) {
    const std::size_t i = upward ? step : count - 1 - step;
    const auto candidates = stable_photon_numbers(sets[i]);
    double chosen = 0.0;
    if (!previous) {
      chosen = upward ? candidates.front() : candidates.back();
    } else {
      double best_distance = std::numeric_limits<double>::infinity();
      for (double n : candidates) {
        const double d = std::abs(n - *previous);
        // Candidates are ascending: on exact ties keep the lower going up, take the upper going down.
        if (d < best_distance || (d == best_distance && !upward)) {
          best_distance = d;
          chosen = n;
        }
      }
      const std::size_t before = upward ? i - 1 : i + 1;
      if (unstable_between(sets[before], *previous, chosen) || unstable_between(sets[i], *previous, chosen)) {
        // Index of the upper end of the grid interval, whichever way we sweep.
        jumps.push_back({dir, upward ? i : i + 1, *previous, chosen});
      }
    }
    path[i] = chosen;
    previous = chosen;
  }
  return path;
}

}  // namespace

SweptParam parse_swept_param(std::string_view name) {
  for (const auto& p : kParamNames) {
    if (name == p.name) return p.param;
  }
  throw InvalidParams("unknown parameter name '" + std::string(name) + "'");
}

const char* to_string(SweptParam p) noexcept {
  for (const auto& entry : kParamNames) {
    if (entry.param == p) return entry.name;
  }
  return "?";
}

void set_param(SystemParams& params, SweptParam which, double value) {
  switch (which) {
    case SweptParam::delta_c: params.delta_c = value; break;
    case SweptParam::delta_d: params.delta_d = value; break;
    case SweptParam::eta: params.eta = value; break;
    case SweptParam::e_l: params.e_l = value; break;
    case SweptParam::kappa: params.kappa = value; break;
    case SweptParam::chi: params.chi = value; break;
    case SweptParam::g: params.g = value; break;
    case SweptParam::gamma_a: params.gamma_a = value; break;
  }
}

double get_param(const SystemParams& params, SweptParam which) {
  switch (which) {
    case SweptParam::delta_c: return params.delta_c;
    case SweptParam::delta_d: return params.delta_d;
    case SweptParam::eta: return params.eta;
    case SweptParam::e_l: return params.e_l;
    case SweptParam::kappa: return params.kappa;
    case SweptParam::chi: return params.chi;
    case SweptParam::g: return params.g;
    case SweptParam::gamma_a: return params.gamma_a;
  }
  return 0.0;
}

std::vector<double> linspace(const Range& range, std::size_t points) {
  if (points < 2) throw InvalidParams("a sweep needs at least 2 points");
  std::vector<double> v(points);
  const double step = (range.stop - range.start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) v[i] = range.start + step * static_cast<double>(i);
  v.back() = range.stop;
  return v;
}

DetuningTie parse_detuning_tie(std::string_view name) {
  if (name == "none") return DetuningTie::none;
  if (name == "equal") return DetuningTie::equal;
  if (name == "opposite") return DetuningTie::opposite;
  throw InvalidParams("unknown detuning tie '" + std::string(name) + "' (none|equal|opposite)");
}

const char* to_string(DetuningTie t) noexcept {
  switch (t) {
    case DetuningTie::none: return "none";
    case DetuningTie::equal: return "equal";
    case DetuningTie::opposite: return "opposite";
  }
  return "?";
}

SweepDirection parse_direction(std::string_view name) {
  if (name == "up") return SweepDirection::up;
  if (name == "down") return SweepDirection::down;
  if (name == "both") return SweepDirection::both;
  throw InvalidParams("unknown sweep direction '" + std::string(name) + "' (up|down|both)");
}

double SweepTrace::hysteresis_area() const {
  if (up_path.size() != values.size() || down_path.size() != values.size()) return 0.0;
  double area = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double left = down_path[i - 1] - up_path[i - 1];
    const double right = down_path[i] - up_path[i];
    area += 0.5 * (left + right) * (values[i] - values[i - 1]);
  }
  return area;
}

SweepTrace sweep_parameter(const SystemParams& params, SweptParam which, const Range& range,
                           std::size_t points, DetuningTie tie) {
  SweepTrace trace;
  trace.swept_name = to_string(which);
  trace.values = linspace(range, points);
  trace.root_sets.resize(points);
  trace.max_stable_n.resize(points);
  parallel_for(points, [&](std::size_t i) {
    SystemParams p = params;
    set_param(p, which, trace.values[i]);
    if (which == SweptParam::delta_c) {
      if (tie == DetuningTie::equal) p.delta_d = trace.values[i];
      if (tie == DetuningTie::opposite) p.delta_d = -trace.values[i];
    }
    trace.root_sets[i] = steady_roots(p);
    trace.max_stable_n[i] = stable_photon_numbers(trace.root_sets[i]).back();
  });
  return trace;
}

SweepTrace sweep_detuning(const SystemParams& params, const Range& range, std::size_t points, DetuningTie tie) {
  return sweep_parameter(params, SweptParam::delta_c, range, points, tie);
}

SweepTrace follow_branches(const SystemParams& params, SweptParam which, const Range& range,
                           std::size_t points, SweepDirection direction) {
  auto trace = sweep_parameter(params, which, range, points);
  if (direction != SweepDirection::down) trace.up_path = follow(trace.root_sets, true, trace.jumps);
  if (direction != SweepDirection::up) trace.down_path = follow(trace.root_sets, false, trace.jumps);
  return trace;
}

SweepTrace sweep_drive(const SystemParams& params, const Range& e_l_range, std::size_t points,
                       SweepDirection direction) {
  return follow_branches(params, SweptParam::e_l, e_l_range, points, direction);
}

double knee_midpoint_drive(const SystemParams& params) {
  const auto tp = turning_points(params);
  if (tp.n.size() != 2) return params.e_l;
  return 0.5 * (drive_for_photon_number(params, tp.n[0]) + drive_for_photon_number(params, tp.n[1]));
}

BistabilityMap bistability_map(const SystemParams& params, const MapAxis& x, const MapAxis& y) {
  BistabilityMap map;
  map.x = x;
  map.y = y;
  map.x_values = linspace(x.range, x.points);
  map.y_values = linspace(y.range, y.points);
  const std::size_t nx = map.x_values.size();
  map.cells.resize(nx * map.y_values.size());
  parallel_for(map.cells.size(), [&](std::size_t k) {
    SystemParams p = params;
    set_param(p, x.param, map.x_values[k % nx]);
    set_param(p, y.param, map.y_values[k / nx]);
    MapCell cell;
    const auto verdict = bistability_predicate(p);
    const auto eff = effective_params(p);
    cell.predicate = verdict.bistable;
    cell.discriminant = verdict.bracket;
    cell.root_count = static_cast<int>(steady_roots(p).branches.size());
    SystemParams at_knee = p;
    at_knee.e_l = knee_midpoint_drive(p);
    cell.knee_root_count = static_cast<int>(steady_roots(at_knee).branches.size());
    const double scale = eff.theta_eff * eff.theta_eff + 3.0 * eff.gamma_eff * eff.gamma_eff;
    cell.near_boundary = std::abs(verdict.compact) <= kBoundaryBand * scale;
    cell.disagrees = !cell.near_boundary && cell.predicate != (cell.knee_root_count == 3);
    map.cells[k] = cell;
  });
  return map;
}

}  // namespace omx
