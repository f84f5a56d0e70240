#include "omx/probe_response.hpp"

#include <cmath>
#include <string>

#include "omx/error.hpp"

namespace omx {
namespace {

const cdouble kI{0.0, 1.0};

[[noreturn]] void singular(const char* what, double delta_p) {
  throw NumericalError(std::string(what) + " at delta_p = " + std::to_string(delta_p));
}

}  // namespace

OperatingPoint OperatingPoint::from_photon_number(double n) {
  if (!(n >= 0.0)) throw InvalidParams("photon number must be non-negative");
  return {n, cdouble(std::sqrt(n), 0.0)};
}

OperatingPoint OperatingPoint::from_branch(const SteadyStateBranch& branch) noexcept {
  return {branch.n, branch.a_s};
}

LinearFactors linear_factors(const SystemParams& p, double n, double delta_p) {
  require_valid(p);
  if (!(n >= 0.0)) throw InvalidParams("photon number must be non-negative");
  const cdouble z_inv{kOmegaM * kOmegaM - delta_p * delta_p, -p.gamma_m * delta_p};
  if (z_inv == cdouble{}) singular("undamped mechanical pole", delta_p);

  LinearFactors f;
  f.z = 1.0 / z_inv;
  f.delta_tilde = p.delta_c - kOmegaM * p.chi * p.chi * n - 2.0 * p.kappa * n;
  f.m_drift = cdouble(-p.eta, -f.delta_tilde);
  const cdouble shift = kI * (kOmegaM * kOmegaM * kOmegaM) * p.chi * p.chi * n * f.z;
  f.x_factor = kI * delta_p + std::conj(f.m_drift) - shift;
  f.y_factor = kI * delta_p + f.m_drift + shift;
  return f;
}

ProbeResponse probe_amplitude(const SystemParams& p, const OperatingPoint& op, double delta_p) {
  const auto f = linear_factors(p, op.n, delta_p);
  const double w3 = kOmegaM * kOmegaM * kOmegaM;
  const cdouble coupling = w3 * p.chi * p.chi * f.z + p.kappa;  // (chi^2 Z + kappa)
  const cdouble denom = op.n * op.n * coupling * coupling - f.x_factor * f.y_factor;
  if (denom == cdouble{}) singular("vanishing response denominator", delta_p);

  ProbeResponse r;
  r.delta_p = delta_p;
  const double drive = std::sqrt(2.0 * p.eta) * p.e_p;
  r.a1 = drive * f.x_factor / denom;

  // Conjugate-sideband balance: (-i Dp - M* + i chi^2 n Z) A2* = -a_s*^2 (i kappa + i chi^2 Z) A1.
  const cdouble c = kI * coupling;
  cdouble a2_conj{};
  if (f.x_factor != cdouble{}) {
    a2_conj = std::conj(op.a_s) * std::conj(op.a_s) * c * r.a1 / f.x_factor;
  } else if (op.a_s * op.a_s * c != cdouble{}) {
    a2_conj = -(drive + f.y_factor * r.a1) / (op.a_s * op.a_s * c);
  }
  r.a2 = std::conj(a2_conj);
  r.q1 = f.z * kOmegaM * kOmegaM * p.chi * (std::conj(op.a_s) * r.a1 + op.a_s * a2_conj);
  r.t = std::norm(1.0 - 2.0 * p.eta * f.x_factor / denom);
  return r;
}

double transmission(const SystemParams& p, double n, double delta_p) {
  const auto f = linear_factors(p, n, delta_p);
  const cdouble coupling = kOmegaM * kOmegaM * kOmegaM * p.chi * p.chi * f.z + p.kappa;
  const cdouble denom = n * n * coupling * coupling - f.x_factor * f.y_factor;
  if (denom == cdouble{}) singular("vanishing response denominator", delta_p);
  return std::norm(1.0 - 2.0 * p.eta * f.x_factor / denom);
}

EitResponse eit_model_response(const SystemParams& p, double n, double delta_p) {
  require_valid(p);
  if (!(n >= 0.0)) throw InvalidParams("photon number must be non-negative");
  const double delta_c_eff = p.delta_c - kOmegaM * p.chi * p.chi * n - 2.0 * p.kappa * n;
  const double g_alpha_sq = kOmegaM * kOmegaM * p.chi * p.chi * n / 2.0;
  const cdouble mech{0.5 * p.gamma_m, kOmegaM - delta_p};

  EitResponse r;
  if (mech == cdouble{}) {
    if (g_alpha_sq > 0.0) {
      // Infinite self-energy: the sideband cancels the probe completely.
      r.delta_a = 0.0;
      r.t = 1.0;
      return r;
    }
  }
  cdouble denom{p.eta, delta_c_eff - delta_p};
  if (g_alpha_sq > 0.0) denom += g_alpha_sq / mech;
  if (denom == cdouble{}) singular("vanishing EIT denominator", delta_p);
  r.delta_a = std::sqrt(2.0 * p.eta) * p.e_p / denom;
  r.t = std::norm(1.0 - 2.0 * p.eta / denom);
  return r;
}

}  // namespace omx
