#include "pgame/trigger.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pgame/equilibrium.hpp"
#include "pgame/error.hpp"

namespace pgame {

void require_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::DeltaOutOfRange, "delta",
                "delta out of range [0, 1) (got " + std::to_string(delta) +
                    ")");
  }
}

double critical_delta(const GameParams& params) {
  const double k = params.k();
  return k * k / (8.0 * params.c2() * params.l() + k * k);
}

double best_deviation_against(const GameParams& params, double x_bar) {
  return best_response_closed(params, x_bar);
}

double deviation_stage_payoff(const GameParams& params, double x_bar) {
  require_effort(params, x_bar, "x_bar");
  const double a = params.alpha();
  const double s = 1.0 + params.c1() * x_bar;
  return a / 2.0 * (x_bar + a / (8.0 * params.c2()) * s * s);
}

TriggerReport trigger_report(const GameParams& params, double delta,
                             double x_bar) {
  require_delta(delta);
  require_effort(params, x_bar, "x_bar");

  TriggerReport r;
  r.delta = delta;
  r.target_effort = x_bar;
  r.critical_delta = critical_delta(params);
  r.coop_pv = stage_payoff(params, {x_bar, x_bar}).u2 / (1.0 - delta);
  r.dev_best_response = best_deviation_against(params, x_bar);
  r.dev_stage_payoff = deviation_stage_payoff(params, x_bar);
  r.dev_pv = r.dev_stage_payoff + delta * nash_payoff(params) / (1.0 - delta);
  const double scale = std::max(1.0, std::abs(r.coop_pv));
  r.is_spe = r.coop_pv >= r.dev_pv - kSpeTolerance * scale;
  return r;
}

double upper_root_formula(const GameParams& params, double delta) {
  const double a = params.alpha();
  const double k = params.k();
  const double ac1 = a * params.c1();
  const double c2 = params.c2();
  const double base = k * k - delta * ac1 * ac1;
  return a / k * (base + 32.0 * delta * c2 * c2) / base;
}

SustainabilityQuadratic sustainability_quadratic(const GameParams& params,
                                                 double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::DeltaOutOfRange, "delta",
                "delta out of range (0, 1) (got " + std::to_string(delta) +
                    ")");
  }
  const double a = params.alpha();
  const double c2 = params.c2();
  const double ac1 = a * params.c1();
  const double k = params.k();

  SustainabilityQuadratic q;
  q.a = -(k * k - ac1 * ac1 * delta) / (16.0 * c2);
  q.b = a / (8.0 * c2) * (k + delta * (4.0 * c2 + ac1));
  q.c = -(a * a) / (16.0 * c2) *
        (delta * (32.0 * c2 * c2 - ac1 * ac1) / (k * k) + 1.0);
  q.discriminant = q.b * q.b - 4.0 * q.a * q.c;
  q.sqrt_disc = 2.0 * a * c2 * delta / k;
  q.root_low = a / k;
  q.root_high = upper_root_formula(params, delta);
  return q;
}

SustainResult sustainable_effort(const GameParams& params, double delta) {
  require_delta(delta);
  if (delta == 0.0) {
    return {nash_equilibrium(params).x1, SustainBranch::OneShotNash};
  }
  if (delta >= critical_delta(params)) {
    return {optimal_effort(params), SustainBranch::FullCooperation};
  }
  return {upper_root_formula(params, delta), SustainBranch::QuadraticRoot};
}

double max_sustainable_effort(const GameParams& params, double delta) {
  return sustainable_effort(params, delta).effort;
}

CorollaryLimits corollary_limits(const GameParams& params) {
  return {upper_root_formula(params, 0.0),
          upper_root_formula(params, critical_delta(params))};
}

}  // namespace pgame
