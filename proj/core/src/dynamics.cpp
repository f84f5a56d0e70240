#include "omx/dynamics.hpp"

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace omx {
namespace {

using State = std::array<double, 6>;

State pack(const MeanFieldState& s) {
  return {s.q, s.p, s.a.real(), s.a.imag(), s.sigma.real(), s.sigma.imag()};
}

MeanFieldState unpack(const State& x) {
  return {x[0], x[1], {x[2], x[3]}, {x[4], x[5]}};
}

double norm2(const State& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

MeanFieldState state_from_branch(const SteadyStateBranch& branch) noexcept {
  return {branch.q_s, branch.p_s, branch.a_s, branch.sigma_s};
}

MeanFieldState mean_field_rhs(const SystemParams& p, const MeanFieldState& y, double t,
                              bool include_probe, double delta_p) noexcept {
  const cdouble i{0.0, 1.0};
  const double n = std::norm(y.a);
  const double drive_scale = std::sqrt(2.0 * p.eta);

  MeanFieldState dy;
  dy.q = kOmegaM * y.p;
  dy.p = -kOmegaM * y.q + p.chi * kOmegaM * n - p.gamma_m * y.p;
  dy.a = -i * p.delta_c * y.a + i * p.chi * kOmegaM * y.a * y.q - i * p.g * y.sigma +
         i * p.kappa * n * y.a + drive_scale * p.e_l - p.eta * y.a;
  if (include_probe) dy.a += drive_scale * p.e_p * std::exp(-i * delta_p * t);
  dy.sigma = -(p.gamma_a + i * p.delta_d) * y.sigma + i * p.g * p.sigma_z * y.a;
  return dy;
}

OdeResult time_domain_oracle(const SystemParams& params, const MeanFieldState& initial,
                             const OdeOptions& options) {
  namespace odeint = boost::numeric::odeint;
  require_valid(params);

  auto system = [&](const State& x, State& dxdt, double t) {
    dxdt = pack(mean_field_rhs(params, unpack(x), t, options.include_probe, options.delta_p));
  };
  auto residual_of = [&](const State& x, double t) {
    State f{};
    system(x, f, t);
    return norm2(f) / (1.0 + norm2(x));
  };

  OdeResult result;
  auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol,
                                           odeint::runge_kutta_dopri5<State>());
  stepper.initialize(pack(initial), 0.0, 1e-3);

  const bool sampling = options.sample_interval > 0.0;
  double next_sample = 0.0;
  double next_check = options.check_interval;
  State tmp{};

  while (stepper.current_time() < options.t_max) {
    stepper.do_step(system);
    const double now = stepper.current_time();
    while (sampling && next_sample <= now && next_sample <= options.t_max) {
      stepper.calc_state(next_sample, tmp);
      result.trajectory.push_back({next_sample, unpack(tmp)});
      next_sample += options.sample_interval;
    }
    if (!options.include_probe && now >= next_check) {
      if (residual_of(stepper.current_state(), now) <= options.fixed_point_tol) {
        result.converged = true;
        break;
      }
      next_check = now + options.check_interval;
    }
  }

  double t_end = stepper.current_time();
  State final_state = stepper.current_state();
  if (t_end > options.t_max) {
    stepper.calc_state(options.t_max, final_state);
    t_end = options.t_max;
  }
  result.final_state = unpack(final_state);
  result.t_end = t_end;
  result.residual = residual_of(final_state, t_end);
  if (!options.include_probe && !result.converged) {
    result.converged = result.residual <= options.fixed_point_tol;
  }
  return result;
}

}  // namespace omx
