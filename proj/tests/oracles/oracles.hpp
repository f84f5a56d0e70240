#pragma once

// Test-only reference computations. Nothing here calls into the steady-state
// or probe-response code paths; each quantity is rebuilt from SystemParams.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "omx/params.hpp"

namespace omx::oracle {

using cd = std::complex<double>;

/// Cavity denominator from the fixed point of the cavity and QD equations:
/// sigma = i g sigma_z a / (gamma_a + i Delta_d) fed back into the cavity line.
inline cd raw_denominator(const SystemParams& p, double n) {
  const cd qd(p.gamma_a, p.delta_d);
  const cd kerr_and_mech(0.0, (p.chi * p.chi + p.kappa) * n);
  return cd(p.eta, p.delta_c) - kerr_and_mech - p.g * p.g * p.sigma_z / qd;
}

/// n |d(n)|^2, the left side of the drive balance.
inline double response(const SystemParams& p, double n) { return n * std::norm(raw_denominator(p, n)); }

inline double drive_term(const SystemParams& p) { return 2.0 * p.eta * p.e_l * p.e_l; }

/// Monomial coefficients {c0, c1, c2, c3} of response(n) - drive_term,
/// recovered by interpolating through n = 0, 1, 2, 3.
inline std::array<double, 4> expanded_cubic(const SystemParams& p) {
  // Vandermonde system, solved by Gaussian elimination with partial pivoting.
  double a[4][5];
  for (int i = 0; i < 4; ++i) {
    double x = 1.0;
    for (int j = 0; j < 4; ++j) {
      a[i][j] = x;
      x *= i;
    }
    a[i][4] = response(p, i);
  }
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    for (int k = 0; k < 5; ++k) std::swap(a[c][k], a[piv][k]);
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 5; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = a[i][4] / a[i][i];
  out[0] -= drive_term(p);
  return out;
}

/// Upper bound on steady photon numbers: n Gamma^2 <= n |d|^2 = drive.
inline double n_bound(const SystemParams& p) {
  const double gamma = raw_denominator(p, 0.0).real();
  return drive_term(p) / (gamma * gamma);
}

template <class F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Roots of response(n) = drive found by sign changes on a uniform scan of
/// [0, 1.01 n_bound], refined by bisection. Tangential roots are not seen.
inline std::vector<double> dense_scan_roots(const SystemParams& p, int points = 100000) {
  std::vector<double> roots;
  const double drive = drive_term(p);
  if (drive == 0.0) return {0.0};
  auto f = [&](double n) { return response(p, n) - drive; };
  const double top = 1.01 * n_bound(p);
  double prev_n = 0.0;
  double prev_f = f(0.0);
  for (int i = 1; i <= points; ++i) {
    const double n = top * i / points;
    const double fn = f(n);
    if ((fn < 0.0) != (prev_f < 0.0)) roots.push_back(bisect(f, prev_n, n));
    prev_n = n;
    prev_f = fn;
  }
  return roots;
}

/// Zeros of d(response)/dn by a scan of central differences.
inline std::vector<double> knee_scan(const SystemParams& p, double n_max, int points = 100000) {
  auto slope = [&](double n) {
    const double h = 1e-5 * std::max(1.0, n);
    return (response(p, n + h) - response(p, n - h)) / (2.0 * h);
  };
  std::vector<double> knees;
  double prev_n = 1e-9;
  double prev_s = slope(prev_n);
  for (int i = 1; i <= points; ++i) {
    const double n = n_max * i / points;
    const double s = slope(n);
    if ((s < 0.0) != (prev_s < 0.0)) knees.push_back(bisect(slope, prev_n, n));
    prev_n = n;
    prev_s = s;
  }
  return knees;
}

/// Probe amplitudes (A1, A2*) by harmonic balance of the linearized cavity
/// and mechanical equations. The ansatz delta_a = A1 e^{-i Dp t} + A2 e^{+i Dp t}
/// is inserted term by term; the 2x2 system is assembled by probing the
/// residual with unit vectors and solved by Cramer's rule.
inline std::pair<cd, cd> harmonic_balance(const SystemParams& p, cd a_s, double delta_p) {
  const cd i(0.0, 1.0);
  const double n = std::norm(a_s);
  const cd drift = i * (p.chi * p.chi * n + 2.0 * p.kappa * n - p.delta_c) - p.eta;
  const cd source = std::sqrt(2.0 * p.eta) * p.e_p;
  // Mechanical response to a force at e^{s t}: Q = chi F / (s^2 + gamma_m s + 1).
  auto mech = [&](cd s) { return 1.0 / (s * s + p.gamma_m * s + 1.0); };
  const cd s_minus = -i * delta_p;
  const cd s_plus = i * delta_p;

  auto residual = [&](cd a1, cd a2c, bool with_source) -> std::pair<cd, cd> {
    const cd am = a1;             // e^{-i Dp t} part of delta_a
    const cd ap = std::conj(a2c); // e^{+i Dp t} part of delta_a
    // delta_a^dagger parts: e^{-i Dp t} -> conj(ap), e^{+i Dp t} -> conj(am)
    const cd dm = std::conj(ap);
    const cd dp = std::conj(am);
    const cd q_m = p.chi * (std::conj(a_s) * am + a_s * dm) * mech(s_minus);
    const cd q_p = p.chi * (std::conj(a_s) * ap + a_s * dp) * mech(s_plus);
    cd r_m = s_minus * am - drift * am - i * p.chi * a_s * q_m - i * p.kappa * a_s * a_s * dm;
    const cd r_p = s_plus * ap - drift * ap - i * p.chi * a_s * q_p - i * p.kappa * a_s * a_s * dp;
    if (with_source) r_m -= source;
    return {r_m, std::conj(r_p)};
  };

  const auto [b0, b1] = residual(0.0, 0.0, true);
  const auto [k00, k10] = residual(1.0, 0.0, false);
  const auto [k01, k11] = residual(0.0, 1.0, false);
  // K v = -b
  const cd det = k00 * k11 - k01 * k10;
  const cd a1 = (-b0 * k11 + k01 * b1) / det;
  const cd a2c = (-b1 * k00 + k10 * b0) / det;
  return {a1, a2c};
}

/// Transmission from a probe amplitude: T = |1 - sqrt(2 eta) A1 / E_p|^2.
inline double transmission_from_a1(const SystemParams& p, cd a1) {
  return std::norm(1.0 - std::sqrt(2.0 * p.eta) * a1 / p.e_p);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }
inline double rel_diff(cd a, cd b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace omx::oracle
