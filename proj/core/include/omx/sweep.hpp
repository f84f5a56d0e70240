#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "omx/params.hpp"
#include "omx/steady_state.hpp"

namespace omx {

enum class SweptParam { delta_c, delta_d, eta, e_l, kappa, chi, g, gamma_a };

/// Throws InvalidParams for unknown names.
[[nodiscard]] SweptParam parse_swept_param(std::string_view name);
[[nodiscard]] const char* to_string(SweptParam p) noexcept;
void set_param(SystemParams& params, SweptParam which, double value);
[[nodiscard]] double get_param(const SystemParams& params, SweptParam which);

struct Range {
  double start = 0.0;
  double stop = 1.0;
};

/// `points` values from start to stop inclusive.
[[nodiscard]] std::vector<double> linspace(const Range& range, std::size_t points);

/// How Delta_d follows Delta_c in detuning sweeps.
enum class DetuningTie { none, equal, opposite };

[[nodiscard]] DetuningTie parse_detuning_tie(std::string_view name);
[[nodiscard]] const char* to_string(DetuningTie t) noexcept;

enum class SweepDirection { up, down, both };

[[nodiscard]] SweepDirection parse_direction(std::string_view name);

/// Discontinuity in a followed path between values[index - 1] and values[index].
struct Jump {
  SweepDirection direction = SweepDirection::up;
  std::size_t index = 0;
  double from_n = 0.0;
  double to_n = 0.0;
};

struct SweepTrace {
  std::string swept_name;
  std::vector<double> values;
  std::vector<RootSet> root_sets;
  std::vector<double> max_stable_n;  ///< highest stable branch at each value
  std::vector<double> up_path;       ///< empty unless branch-following ran upward
  std::vector<double> down_path;     ///< empty unless branch-following ran downward
  std::vector<Jump> jumps;

  /// Integral of (down_path - up_path) over the swept value; >= 0 for hysteresis loops.
  [[nodiscard]] double hysteresis_area() const;
};

/// Root sets over a parameter range, evaluated in parallel.
[[nodiscard]] SweepTrace sweep_parameter(const SystemParams& params, SweptParam which, const Range& range,
                                         std::size_t points, DetuningTie tie = DetuningTie::none);

/// Delta_c sweep, optionally dragging Delta_d along as +Delta_c or -Delta_c.
[[nodiscard]] SweepTrace sweep_detuning(const SystemParams& params, const Range& range, std::size_t points,
                                        DetuningTie tie);

/// Branch-following sweep of any parameter (hysteresis).
///
/// Each step picks the stable branch closest in n to the previous one; when the
/// followed branch has disappeared the closest remaining stable branch wins,
/// which is the jump. Ties go to the lower branch sweeping up and the upper
/// branch sweeping down.
[[nodiscard]] SweepTrace follow_branches(const SystemParams& params, SweptParam which, const Range& range,
                                         std::size_t points, SweepDirection direction);

[[nodiscard]] SweepTrace sweep_drive(const SystemParams& params, const Range& e_l_range, std::size_t points,
                                     SweepDirection direction);

struct MapAxis {
  SweptParam param = SweptParam::kappa;
  Range range;
  std::size_t points = 101;
};

struct MapCell {
  int root_count = 0;        ///< distinct non-negative roots at the configured drive
  int knee_root_count = 0;   ///< roots at the knee-midpoint drive (or configured drive when no knees)
  bool predicate = false;
  double discriminant = 0.0;
  bool near_boundary = false;  ///< within the relative tolerance band of Theta^2 = 3 Gamma^2
  bool disagrees = false;      ///< predicate != (knee_root_count == 3) outside the band
};

struct BistabilityMap {
  MapAxis x;
  MapAxis y;
  std::vector<double> x_values;
  std::vector<double> y_values;
  std::vector<MapCell> cells;  ///< row-major: cells[iy * x_values.size() + ix]

  [[nodiscard]] const MapCell& at(std::size_t ix, std::size_t iy) const { return cells[iy * x_values.size() + ix]; }
};

/// Relative half-width of the band around the predicate boundary excluded from agreement checks.
inline constexpr double kBoundaryBand = 1e-6;

/// Drive halfway between the two knee drives, where three roots must coexist.
/// Returns configured e_l when there are no knees.
[[nodiscard]] double knee_midpoint_drive(const SystemParams& params);

[[nodiscard]] BistabilityMap bistability_map(const SystemParams& params, const MapAxis& x, const MapAxis& y);

}  // namespace omx
