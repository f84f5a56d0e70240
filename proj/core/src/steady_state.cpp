#include "omx/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "omx/error.hpp"

namespace omx {
namespace {

// Roots closer than this (relative to max(1, n)) are one degenerate root.
constexpr double kMergeTolerance = 1e-8;
// |f| at a critical point below this fraction of 2 eta E_l^2 counts as touching zero.
constexpr double kTouchTolerance = 1e-13;

// Real roots of a x^2 + b x + c = 0 without cancellation, ascending.
std::vector<double> solve_quadratic(double a, double b, double c) {
  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0) roots.push_back(-c / b);
    return roots;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return roots;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = q / a;
  double r2 = q != 0.0 ? c / q : r1;
  if (r1 > r2) std::swap(r1, r2);
  roots = {r1, r2};
  return roots;
}

// Root of a monotone cubic segment with f(lo) and f(hi) of opposite sign.
double bracketed_root(const Cubic& f, double lo, double hi) {
  double f_lo = f(lo);
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
    }
    const double df = f.derivative(x);
    double next = df != 0.0 ? x - fx / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

struct RawRoot {
  double n;
  bool marginal;
};

std::vector<RawRoot> nonnegative_roots(const Cubic& f, const EffectiveParams& eff) {
  std::vector<RawRoot> roots;
  if (eff.e_tilde_sq == 0.0) {
    roots.push_back({0.0, false});
    return roots;
  }
  if (f.c3 == 0.0) {
    roots.push_back({-f.c0 / f.c1, false});
    return roots;
  }
  // n |d|^2 >= n Gamma^2 bounds every root from above.
  const double upper = eff.e_tilde_sq / (eff.gamma_eff * eff.gamma_eff) * (1.0 + 1e-12) + 1e-300;
  std::vector<double> cuts{0.0};
  for (double c : solve_quadratic(3.0 * f.c3, 2.0 * f.c2, f.c1)) {
    if (c > 0.0 && c < upper) cuts.push_back(c);
  }
  cuts.push_back(upper);

  const double touch = kTouchTolerance * eff.e_tilde_sq;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    const bool interior_hi = i + 2 < cuts.size();
    if (interior_hi && std::abs(f_hi) <= touch) {
      roots.push_back({hi, true});
      continue;
    }
    if (i > 0 && std::abs(f_lo) <= touch) continue;  // already recorded as a touching root
    if ((f_lo < 0.0) != (f_hi < 0.0)) roots.push_back({bracketed_root(f, lo, hi), false});
  }

  std::sort(roots.begin(), roots.end(), [](const RawRoot& a, const RawRoot& b) { return a.n < b.n; });
  std::vector<RawRoot> merged;
  for (const auto& r : roots) {
    if (!merged.empty() && std::abs(r.n - merged.back().n) < kMergeTolerance * std::max(1.0, r.n)) {
      merged.back().n = 0.5 * (merged.back().n + r.n);
      merged.back().marginal = true;
      continue;
    }
    merged.push_back(r);
  }
  return merged;
}

}  // namespace

const char* to_string(Stability s) noexcept {
  return s == Stability::stable ? "stable" : "unstable";
}

Cubic drive_polynomial(const SystemParams& params, CoefficientMode mode) {
  const auto eff = effective_params(params);
  Cubic c;
  c.c3 = eff.beta * eff.beta;
  c.c2 = -2.0 * eff.beta * eff.theta_eff;
  c.c1 = eff.gamma_eff * eff.gamma_eff + eff.theta_eff * eff.theta_eff;
  c.c0 = -eff.e_tilde_sq;
  if (mode == CoefficientMode::halved_quadratic) {
    const auto& p = params;
    const double g2 = p.g * p.g;
    const double qd = eff.d_qd > 0.0 ? 1.0 / eff.d_qd : 0.0;
    c.c2 = eff.beta * (g2 * p.delta_d * qd - p.delta_c);
    c.c1 = p.eta * p.eta + p.delta_c * p.delta_c +
           (g2 * g2 + 2.0 * p.eta * p.gamma_a * g2 - 2.0 * p.delta_d * p.delta_c * g2) * qd;
  }
  return c;
}

cdouble cavity_denominator(const EffectiveParams& eff, double n) noexcept {
  return {eff.gamma_eff, eff.theta_eff - eff.beta * n};
}

SteadyStateBranch branch_at(const SystemParams& p, double n) {
  const auto eff = effective_params(p);
  SteadyStateBranch b;
  b.n = n;
  b.a_s = std::sqrt(2.0 * p.eta) * p.e_l / cavity_denominator(eff, n);
  b.q_s = p.chi * n;
  b.p_s = 0.0;
  if (p.g != 0.0) {
    b.sigma_s = cdouble(0.0, p.g * p.sigma_z) * b.a_s / cdouble(p.gamma_a, p.delta_d);
  }
  const Cubic f{eff.beta * eff.beta, -2.0 * eff.beta * eff.theta_eff,
                eff.gamma_eff * eff.gamma_eff + eff.theta_eff * eff.theta_eff, -eff.e_tilde_sq};
  b.slope = f.derivative(n);
  return b;
}

RootSet classify_stability(RootSet roots) {
  for (auto& b : roots.branches) {
    b.stability = (!b.marginal && b.slope > 0.0) ? Stability::stable : Stability::unstable;
  }
  return roots;
}

RootSet steady_roots(const SystemParams& params) {
  const auto eff = effective_params(params);
  const auto cubic = drive_polynomial(params);

  RootSet set;
  set.params_snapshot = params;
  set.discriminant_value = bistability_predicate(params).bracket;

  const auto raw = nonnegative_roots(cubic, eff);
  if (raw.empty()) throw NumericalError("steady_roots: failed to bracket any root");
  int multiplicity = 0;
  for (const auto& r : raw) {
    auto b = branch_at(params, r.n);
    b.marginal = r.marginal;
    set.has_degenerate = set.has_degenerate || r.marginal;
    multiplicity += r.marginal ? 2 : 1;
    set.branches.push_back(b);
  }
  const int degree = cubic.c3 != 0.0 ? 3 : (cubic.c1 != 0.0 ? 1 : 0);
  set.diagnostics.complex_roots = std::max(0, degree - multiplicity);
  // For E_l > 0, n |d|^2 - E~^2 < 0 on n < 0, so negative real roots cannot occur.
  set.diagnostics.negative_roots = 0;

  set.is_bistable = set.branches.size() == 3 && !set.has_degenerate &&
                    std::all_of(set.branches.begin(), set.branches.end(),
                                [](const SteadyStateBranch& b) { return b.n > 0.0; });
  return classify_stability(std::move(set));
}

TurningPoints turning_points(const SystemParams& params) {
  const auto eff = effective_params(params);
  TurningPoints tp;
  if (eff.beta == 0.0) {
    tp.reason = "no nonlinearity (beta = 0): response is linear";
    return tp;
  }
  const double compact = eff.theta_eff * eff.theta_eff - 3.0 * eff.gamma_eff * eff.gamma_eff;
  if (compact <= 0.0) {
    tp.reason = "discriminant not positive: Theta_eff^2 <= 3 Gamma_eff^2";
    return tp;
  }
  const double root = std::sqrt(compact);
  const double n_minus = (2.0 * eff.theta_eff - root) / (3.0 * eff.beta);
  const double n_plus = (2.0 * eff.theta_eff + root) / (3.0 * eff.beta);
  if (!(n_minus > 0.0 && n_plus > 0.0)) {
    tp.reason = "turning points at non-positive photon number (Theta_eff <= 0)";
    return tp;
  }
  tp.n = {n_minus, n_plus};
  return tp;
}

double drive_for_photon_number(const SystemParams& params, double n) {
  const auto eff = effective_params(params);
  return std::sqrt(n * std::norm(cavity_denominator(eff, n)) / (2.0 * params.eta));
}

double discriminant_bracket(const SystemParams& p) noexcept {
  const double g2 = p.g * p.g;
  const double g4 = g2 * g2;
  const double d = p.gamma_a * p.gamma_a + p.delta_d * p.delta_d;
  return 4.0 * g4 * p.delta_d * p.delta_d + (p.delta_c * p.delta_c - 3.0 * p.eta * p.eta) * d * d -
         (2.0 * g2 * p.delta_c * p.delta_d + 3.0 * g4 + 6.0 * p.eta * p.gamma_a * g2) * d;
}

BistabilityVerdict bistability_predicate(const SystemParams& params) {
  const auto eff = effective_params(params);
  BistabilityVerdict v;
  v.compact = eff.theta_eff * eff.theta_eff - 3.0 * eff.gamma_eff * eff.gamma_eff;
  v.bracket = params.sigma_z == -1.0 ? discriminant_bracket(params)
                                     : v.compact * eff.d_qd * eff.d_qd;
  v.bistable = eff.beta > 0.0 && v.compact > 0.0 && eff.theta_eff > 0.0;
  return v;
}

}  // namespace omx
