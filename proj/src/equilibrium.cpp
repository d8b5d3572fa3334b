#include "pgame/equilibrium.hpp"

#include "pgame/error.hpp"

namespace pgame {

double best_response_closed(const GameParams& params, double x_other) {
  require_effort(params, x_other, "x_other");
  return params.alpha() * (1.0 + params.c1() * x_other) / (4.0 * params.c2());
}

EffortProfile nash_equilibrium(const GameParams& params) {
  const double x = params.alpha() / params.k();
  return {x, x};
}

double nash_payoff(const GameParams& params) {
  const double a = params.alpha();
  const double k = params.k();
  return a * a * (6.0 * params.c2() - a * params.c1()) / (2.0 * k * k);
}

double optimal_effort(const GameParams& params) {
  const double l = params.l();
  if (!(l > 0.0)) {
    throw Error(ErrorKind::OutOfRange, "l",
                "l = 2*c2 - alpha*c1 must be positive for an interior optimum");
  }
  return params.alpha() / l;
}

EquilibriumReport social_optimum(const GameParams& params) {
  const double a = params.alpha();
  EquilibriumReport r;
  r.x_star = nash_equilibrium(params).x1;
  r.u_star = nash_payoff(params);
  r.x_hat = optimal_effort(params);
  r.u_hat_per_player = a * a / (2.0 * params.l());
  r.joint_at_hat = 2.0 * r.u_hat_per_player;
  r.hessian_det = second_order_certificate(params).hessian_det;
  r.boundary_values = {
      detail::joint_surplus_raw(params, {0.0, 0.0}),
      detail::joint_surplus_raw(params, {a, a}),
      r.joint_at_hat,
  };
  r.unchecked = !params.is_checked();
  return r;
}

SecondOrderCertificate second_order_certificate(const GameParams& params) {
  const double ac1 = params.alpha() * params.c1();
  const double c2 = params.c2();
  SecondOrderCertificate cert;
  cert.d2_own = -2.0 * c2;
  cert.hessian_det = 4.0 * c2 * c2 - ac1 * ac1;
  cert.concave = cert.d2_own < 0.0 && cert.hessian_det > 0.0;
  return cert;
}

}  // namespace pgame
