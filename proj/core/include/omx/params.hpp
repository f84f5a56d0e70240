#pragma once

#include <string>
#include <vector>

namespace omx {

// All frequencies, rates and amplitudes are expressed in units of the
// mechanical frequency, which is therefore exactly 1 inside the library.
inline constexpr double kOmegaM = 1.0;

/// Scenario constants for the cavity + quantum dot + Kerr medium system.
///
/// Defaults are the weak-nonlinearity reference point: eta = 0.4,
/// gamma_a = 0.01, kappa = 0.01, chi = 0.04, g = 0.2, E_l = 2 and
/// Delta_c = Delta_d = 0.5.
struct SystemParams {
  double delta_c = 0.5;   ///< cavity-pump detuning
  double delta_d = 0.5;   ///< QD-pump detuning
  double eta = 0.4;       ///< cavity amplitude decay rate
  double gamma_a = 0.01;  ///< QD decay rate
  double gamma_m = 0.001; ///< mechanical damping rate
  double kappa = 0.01;    ///< Kerr coefficient
  double chi = 0.04;      ///< scaled optomechanical coupling (dimensionless)
  double g = 0.2;         ///< QD-cavity coupling
  double e_l = 2.0;       ///< pump amplitude
  double e_p = 0.01;      ///< probe amplitude
  double sigma_z = -1.0;  ///< steady QD inversion, ground state by default

  bool operator==(const SystemParams&) const = default;
};

/// SI inputs for the coupling-constant converters.
struct PhysicalParams {
  double omega_c = 0.0;      ///< cavity frequency [rad/s]
  double omega_m = 0.0;      ///< mechanical frequency [rad/s]
  double length = 0.0;       ///< cavity length [m]
  double mass = 0.0;         ///< effective mechanical mass [kg]
  double mode_volume = 0.0;  ///< cavity mode volume [m^3]
  double chi3_re = 0.0;      ///< Re of the third-order susceptibility [m^2/V^2]
  double eps0 = 8.8541878128e-12;  ///< dielectric constant [F/m]
};

/// Lumped quantities that turn the steady-state cubic into one-liners.
///
/// With the QD denominator D = gamma_a^2 + Delta_d^2 and sigma_z = -1:
///   beta      = chi^2 + kappa
///   gamma_eff = eta + g^2 gamma_a / D
///   theta_eff = Delta_c - g^2 Delta_d / D
///   e_tilde_sq = 2 eta E_l^2
struct EffectiveParams {
  double beta = 0.0;
  double d_qd = 0.0;
  double gamma_eff = 0.0;
  double theta_eff = 0.0;
  double e_tilde_sq = 0.0;
};

struct ValidationReport {
  std::vector<std::string> violations;

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
  [[nodiscard]] std::string summary() const;
};

[[nodiscard]] ValidationReport validate(const SystemParams& params);

/// Throws InvalidParams carrying the report summary when validation fails.
void require_valid(const SystemParams& params);

[[nodiscard]] EffectiveParams effective_params(const SystemParams& params);

/// Single-photon optomechanical coupling rate G = (w_c / L) sqrt(hbar / (m w_m)), in rad/s.
[[nodiscard]] double coupling_rate_from_physical(const PhysicalParams& phys);

/// Dimensionless optomechanical coupling chi = G / w_m.
[[nodiscard]] double chi_from_physical(const PhysicalParams& phys);

/// Kerr coefficient 3 hbar w_c^2 Re[chi3] / (2 eps0 V_c) in units of w_m.
[[nodiscard]] double kappa_from_medium(const PhysicalParams& phys);

}  // namespace omx
