#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omx/params.hpp"
#include "omx/probe_response.hpp"

namespace omx {

struct GridSpec {
  double start = -2.0;
  double stop = 2.0;
  std::size_t points = 2001;
  /// Insert a 10x denser grid within refine_halfwidth_gammas * gamma_m of +-w_m.
  bool refine_near_mechanical = true;
  double refine_halfwidth_gammas = 10.0;
  int refine_density = 10;
};

/// Strictly increasing probe-detuning grid.
[[nodiscard]] std::vector<double> make_grid(const GridSpec& spec, double gamma_m);

/// Region in which features are searched.
struct FeatureWindow {
  double center = -1.0;
  double half_width = 0.5;
};

struct SpectralFeatures {
  std::vector<double> peak_positions;
  std::vector<double> dip_positions;
  std::optional<double> principal_peak;  ///< highest local maximum in the window
  double peak_value = 0.0;
  double prominence = 0.0;    ///< peak minus the higher of the two flank minima
  double window_width = 0.0;  ///< full width at half prominence
  double contrast = 0.0;      ///< T_max - T_min in the window
  double contrast_normalized = 0.0;  ///< (T_max - T_min) / (T_max + T_min)
  /// (|left slope| - |right slope|) / (|left slope| + |right slope|) at the
  /// half-prominence crossings; positive means the left flank is steeper.
  double asymmetry = 0.0;
};

/// Extrema by 3-point comparison with parabolic refinement. Variations below
/// `flat_tolerance` (absolute, in T) are treated as numerical noise.
[[nodiscard]] SpectralFeatures extract_features(std::span<const double> grid,
                                                std::span<const double> values,
                                                const FeatureWindow& window,
                                                double flat_tolerance = 1e-9);

struct PointError {
  double delta_p = 0.0;
  std::string message;
};

struct Spectrum {
  std::vector<double> grid;
  std::vector<ProbeResponse> responses;  ///< one per grid point that evaluated
  std::vector<double> t_eit;             ///< empty unless requested
  SpectralFeatures features;
  std::vector<std::string> warnings;
  std::vector<PointError> errors;

  [[nodiscard]] std::vector<double> transmission_values() const;
  [[nodiscard]] std::vector<double> evaluated_grid() const;
};

struct SpectrumOptions {
  FeatureWindow window;
  bool with_eit = false;
};

/// Evaluates the probe response on `grid` (must be strictly increasing and have
/// at least 16 points) and extracts features.
[[nodiscard]] Spectrum spectrum(const SystemParams& params, const OperatingPoint& op,
                                std::span<const double> grid, const SpectrumOptions& options = {});

}  // namespace omx
