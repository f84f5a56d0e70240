#pragma once

#include <complex>

#include "omx/params.hpp"
#include "omx/steady_state.hpp"

namespace omx {

/// Pump-dressed operating point seen by the weak probe.
struct OperatingPoint {
  double n = 0.0;  ///< |a_s|^2
  cdouble a_s{};   ///< only its phase beyond n matters, and only for A2

  /// a_s taken real and positive, as when n is specified directly.
  [[nodiscard]] static OperatingPoint from_photon_number(double n);
  [[nodiscard]] static OperatingPoint from_branch(const SteadyStateBranch& branch) noexcept;
};

/// Frequency-domain building blocks of the linearized probe response.
struct LinearFactors {
  cdouble z{};         ///< mechanical susceptibility 1 / (w_m^2 - Dp^2 - i gamma_m Dp)
  cdouble m_drift{};   ///< i (chi^2 n + 2 kappa n - Delta_c) - eta
  cdouble x_factor{};  ///< i Dp + M* - i chi^2 n Z
  cdouble y_factor{};  ///< i Dp + M + i chi^2 n Z
  double delta_tilde = 0.0;  ///< Delta_c - chi^2 n - 2 kappa n, so M = -i Delta~ - eta
};

/// Throws NumericalError at the undamped mechanical pole (gamma_m = 0, Dp = +-w_m).
[[nodiscard]] LinearFactors linear_factors(const SystemParams& params, double n, double delta_p);

struct ProbeResponse {
  double delta_p = 0.0;
  cdouble a1{};  ///< intracavity amplitude at the probe frequency
  cdouble a2{};  ///< Stokes amplitude at 2 w_l - w_p
  cdouble q1{};  ///< mechanical sideband; Q2 = conj(Q1)
  double t = 0.0;  ///< normalized probe power transmission
};

/// Sideband amplitudes and transmission. Requires e_p >= 0; with e_p = 0 the
/// amplitudes vanish while t is still the (E_p-independent) transmission.
[[nodiscard]] ProbeResponse probe_amplitude(const SystemParams& params, const OperatingPoint& op,
                                            double delta_p);

/// T = |1 - 2 eta X / (n^2 (chi^2 Z + kappa)^2 - X Y)|^2.
[[nodiscard]] double transmission(const SystemParams& params, double n, double delta_p);

struct EitResponse {
  cdouble delta_a{};
  double t = 0.0;
};

/// Effective two-mode (EIT-form) approximation of the probe response.
///
/// delta_a = sqrt(2 eta) E_p / [i (Delta~ - Dp) + eta + G2 / (i (w_m - Dp) + gamma_m / 2)]
/// with G2 = chi^2 n / 2. The mechanical amplitude damping gamma_m / 2 and G2 are
/// the values that make the self-energy match the full response near Dp = w_m.
[[nodiscard]] EitResponse eit_model_response(const SystemParams& params, double n, double delta_p);

}  // namespace omx
