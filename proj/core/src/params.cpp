#include "omx/params.hpp"

#include <cmath>

#include "omx/error.hpp"

namespace omx {
namespace {

constexpr double kHbar = 1.054571817e-34;

struct NamedValue {
  const char* name;
  double value;
};

double qd_weight(const SystemParams& p, double d_qd) {
  // g^2 / D, zero when the dot is decoupled (D may vanish then).
  return p.g == 0.0 ? 0.0 : p.g * p.g / d_qd;
}

}  // namespace

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

ValidationReport validate(const SystemParams& p) {
  ValidationReport report;
  const NamedValue fields[] = {
      {"delta_c", p.delta_c}, {"delta_d", p.delta_d}, {"eta", p.eta},
      {"gamma_a", p.gamma_a}, {"gamma_m", p.gamma_m}, {"kappa", p.kappa},
      {"chi", p.chi},         {"g", p.g},             {"e_l", p.e_l},
      {"e_p", p.e_p},         {"sigma_z", p.sigma_z}};
  bool all_finite = true;
  for (const auto& f : fields) {
    if (!std::isfinite(f.value)) {
      report.violations.push_back(std::string(f.name) + " must be finite");
      all_finite = false;
    }
  }
  if (!all_finite) return report;

  if (!(p.eta > 0.0)) report.violations.emplace_back("eta must be positive");
  const NamedValue non_negative[] = {{"gamma_a", p.gamma_a}, {"gamma_m", p.gamma_m},
                                     {"e_l", p.e_l},         {"e_p", p.e_p},
                                     {"chi", p.chi},         {"kappa", p.kappa},
                                     {"g", p.g}};
  for (const auto& f : non_negative) {
    if (f.value < 0.0) report.violations.push_back(std::string(f.name) + " must be non-negative");
  }

  const double d_qd = p.gamma_a * p.gamma_a + p.delta_d * p.delta_d;
  if (p.g > 0.0 && d_qd == 0.0) {
    report.violations.emplace_back("QD denominator vanishes (gamma_a = delta_d = 0 with g > 0)");
  } else if (p.eta > 0.0 && p.g >= 0.0 && p.gamma_a >= 0.0) {
    // Only reachable with an overridden sigma_z.
    const double gamma_eff = p.eta - p.sigma_z * qd_weight(p, d_qd) * p.gamma_a;
    if (!(gamma_eff > 0.0)) {
      report.violations.emplace_back("effective cavity loss must be positive (check sigma_z)");
    }
  }
  return report;
}

void require_valid(const SystemParams& params) {
  const auto report = validate(params);
  if (!report.ok()) throw InvalidParams("invalid parameters: " + report.summary());
}

EffectiveParams effective_params(const SystemParams& p) {
  require_valid(p);
  EffectiveParams e;
  e.beta = kOmegaM * p.chi * p.chi + p.kappa;
  e.d_qd = p.gamma_a * p.gamma_a + p.delta_d * p.delta_d;
  const double w = qd_weight(p, e.d_qd);
  e.gamma_eff = p.eta - p.sigma_z * w * p.gamma_a;
  e.theta_eff = p.delta_c + p.sigma_z * w * p.delta_d;
  e.e_tilde_sq = 2.0 * p.eta * p.e_l * p.e_l;
  return e;
}

double coupling_rate_from_physical(const PhysicalParams& phys) {
  if (!(phys.length > 0.0)) throw InvalidParams("cavity length must be positive");
  if (!(phys.mass > 0.0)) throw InvalidParams("mass must be positive");
  if (!(phys.omega_m > 0.0)) throw InvalidParams("omega_m must be positive");
  if (!(phys.omega_c > 0.0)) throw InvalidParams("omega_c must be positive");
  const double x_zpf = std::sqrt(kHbar / (phys.mass * phys.omega_m));
  return phys.omega_c / phys.length * x_zpf;
}

double chi_from_physical(const PhysicalParams& phys) {
  return coupling_rate_from_physical(phys) / phys.omega_m;
}

double kappa_from_medium(const PhysicalParams& phys) {
  if (!(phys.omega_m > 0.0)) throw InvalidParams("omega_m must be positive");
  if (!(phys.omega_c > 0.0)) throw InvalidParams("omega_c must be positive");
  if (!(phys.mode_volume > 0.0)) throw InvalidParams("mode volume must be positive");
  if (!(phys.eps0 > 0.0)) throw InvalidParams("eps0 must be positive");
  const double kappa = 3.0 * kHbar * phys.omega_c * phys.omega_c * phys.chi3_re /
                       (2.0 * phys.eps0 * phys.mode_volume);
  return kappa / phys.omega_m;
}

}  // namespace omx
