#pragma once

#include <complex>
#include <string>
#include <vector>

#include "omx/params.hpp"

namespace omx {

using cdouble = std::complex<double>;

/// Cubic in the photon number n: c3 n^3 + c2 n^2 + c1 n + c0.
struct Cubic {
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  [[nodiscard]] double operator()(double n) const noexcept { return ((c3 * n + c2) * n + c1) * n + c0; }
  [[nodiscard]] double derivative(double n) const noexcept { return (3.0 * c3 * n + 2.0 * c2) * n + c1; }
};

enum class CoefficientMode {
  canonical,      ///< expansion of n |d(n)|^2 - 2 eta E_l^2
  halved_quadratic,  ///< n^2 coefficient at half the canonical value; diagnostics only
};

/// Drive-response polynomial. Its positive real roots are the steady photon numbers.
[[nodiscard]] Cubic drive_polynomial(const SystemParams& params,
                                     CoefficientMode mode = CoefficientMode::canonical);

/// d(n) = Gamma_eff + i (Theta_eff - beta n); a_s = sqrt(2 eta) E_l / d(n).
[[nodiscard]] cdouble cavity_denominator(const EffectiveParams& eff, double n) noexcept;

enum class Stability { stable, unstable };

[[nodiscard]] const char* to_string(Stability s) noexcept;

struct SteadyStateBranch {
  double n = 0.0;
  cdouble a_s{};
  double q_s = 0.0;
  double p_s = 0.0;
  cdouble sigma_s{};
  Stability stability = Stability::stable;
  bool marginal = false;  ///< merged double root (turning point)
  double slope = 0.0;     ///< d(n |d(n)|^2)/dn at the root
};

struct RootDiagnostics {
  int complex_roots = 0;   ///< counted with multiplicity
  int negative_roots = 0;
};

struct RootSet {
  SystemParams params_snapshot;
  std::vector<SteadyStateBranch> branches;  ///< sorted by n ascending
  double discriminant_value = 0.0;          ///< drive-independent discriminant bracket
  bool is_bistable = false;                 ///< three distinct positive roots at this drive
  bool has_degenerate = false;
  RootDiagnostics diagnostics;
};

/// All real non-negative roots of the drive polynomial, expanded to full branches.
[[nodiscard]] RootSet steady_roots(const SystemParams& params);

/// Slope criterion: stable iff d(n|d|^2)/dn > 0; marginal roots are reported unstable.
[[nodiscard]] RootSet classify_stability(RootSet roots);

/// Full steady state at a given photon number (does not check that n is a root).
[[nodiscard]] SteadyStateBranch branch_at(const SystemParams& params, double n);

struct TurningPoints {
  std::vector<double> n;  ///< empty, or {n_minus, n_plus}
  std::string reason;     ///< why empty
};

/// Zeros of d(n |d(n)|^2)/dn, i.e. the knees of the S-curve.
[[nodiscard]] TurningPoints turning_points(const SystemParams& params);

/// Pump amplitude E_l at which n is a steady state: sqrt(n |d(n)|^2 / (2 eta)).
[[nodiscard]] double drive_for_photon_number(const SystemParams& params, double n);

struct BistabilityVerdict {
  bool bistable = false;
  double bracket = 0.0;  ///< discriminant bracket (sigma_z = -1 form, or D^2 times compact)
  double compact = 0.0;  ///< Theta_eff^2 - 3 Gamma_eff^2
};

/// Drive-independent criterion for the existence of a hysteresis window.
[[nodiscard]] BistabilityVerdict bistability_predicate(const SystemParams& params);

/// The bracket 4g^4 Dd^2 + (Dc^2 - 3 eta^2) D^2 - (2 g^2 Dc Dd + 3 g^4 + 6 eta gamma_a g^2) D.
[[nodiscard]] double discriminant_bracket(const SystemParams& params) noexcept;

}  // namespace omx
