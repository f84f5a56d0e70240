#pragma once

#include <complex>
#include <vector>

#include "omx/params.hpp"
#include "omx/steady_state.hpp"

namespace omx {

/// Mean-field state of the mechanical mode, cavity field and QD polarization.
struct MeanFieldState {
  double q = 0.0;
  double p = 0.0;
  cdouble a{};
  cdouble sigma{};
};

[[nodiscard]] MeanFieldState state_from_branch(const SteadyStateBranch& branch) noexcept;

struct OdeOptions {
  double t_max = 1000.0;
  bool include_probe = false;
  double delta_p = 0.0;            ///< probe detuning, used when include_probe
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double check_interval = 1.0;     ///< how often the fixed-point test runs
  double fixed_point_tol = 1e-11;  ///< |F(y)| / (1 + |y|) below which we stop
  double sample_interval = 0.0;    ///< > 0 records a trajectory at this spacing
};

struct TrajectorySample {
  double t = 0.0;
  MeanFieldState state;
};

struct OdeResult {
  MeanFieldState final_state;
  double t_end = 0.0;
  bool converged = false;  ///< reached a fixed point (never true with the probe on)
  double residual = 0.0;   ///< |F(y)| / (1 + |y|) at t_end
  std::vector<TrajectorySample> trajectory;
};

/// Right-hand side of the mean-field equations at time t.
[[nodiscard]] MeanFieldState mean_field_rhs(const SystemParams& params, const MeanFieldState& y,
                                            double t, bool include_probe, double delta_p) noexcept;

/// Integrates the mean-field equations (Dormand-Prince 5(4), adaptive).
///
/// Without the probe the run stops early once the state is a fixed point to
/// `fixed_point_tol`; otherwise it runs to `t_max`. Non-convergence is reported
/// in the result, never thrown.
[[nodiscard]] OdeResult time_domain_oracle(const SystemParams& params, const MeanFieldState& initial,
                                           const OdeOptions& options);

}  // namespace omx
