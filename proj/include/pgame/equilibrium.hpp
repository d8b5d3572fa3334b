#pragma once

#include "pgame/model.hpp"

namespace pgame {

struct BoundaryValues {
  double u_at_00 = 0.0;
  double u_at_alpha_alpha = 0.0;
  double u_at_hat = 0.0;
};

/// One-shot analysis of the stage game. All surplus values are joint (u1+u2).
struct EquilibriumReport {
  double x_star = 0.0;            // Nash effort per player
  double u_star = 0.0;            // per-player Nash payoff
  double x_hat = 0.0;             // socially optimal effort per player
  double u_hat_per_player = 0.0;
  double joint_at_hat = 0.0;
  double hessian_det = 0.0;
  BoundaryValues boundary_values;
  bool unchecked = false;
};

struct SecondOrderCertificate {
  double d2_own = 0.0;       // d^2 u_i / dx_i^2
  double hessian_det = 0.0;  // of the joint surplus
  bool concave = false;
};

/// alpha * (1 + c1 * x_other) / (4 * c2).
double best_response_closed(const GameParams& params, double x_other);

/// Symmetric Nash profile (x*, x*) with x* = alpha / (4c2 - alpha c1).
EffortProfile nash_equilibrium(const GameParams& params);

/// Per-player Nash payoff alpha^2 (6c2 - alpha c1) / (2 (4c2 - alpha c1)^2).
double nash_payoff(const GameParams& params);

double optimal_effort(const GameParams& params);

// Closed-form Nash and social-optimum summary. x_hat = alpha / l is the
// interior stationary point; boundary_values carries the corner surpluses it
// must dominate (for checked params it always does, ties go to x_hat).
// Throws Error(OutOfRange, "l") when l <= 0, reachable only when unchecked.
EquilibriumReport social_optimum(const GameParams& params);

SecondOrderCertificate second_order_certificate(const GameParams& params);

}  // namespace pgame
