#pragma once

#include "pgame/model.hpp"

namespace pgame {

// p(x) = a x^2 + b x + c, whose nonnegativity is the no-deviation condition
// for grim trigger at target effort x. Coefficients use the 1/(16 c2)
// normalization, in which sqrt(b^2 - 4ac) = 2 alpha c2 delta / K.
struct SustainabilityQuadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double discriminant = 0.0;
  double sqrt_disc = 0.0;  // closed form 2 alpha c2 delta / K
  double root_low = 0.0;   // the Nash effort
  double root_high = 0.0;  // maximal sustainable effort below the threshold
};

struct TriggerReport {
  double delta = 0.0;
  double target_effort = 0.0;
  double coop_pv = 0.0;
  double dev_stage_payoff = 0.0;
  double dev_best_response = 0.0;
  double dev_pv = 0.0;
  bool is_spe = false;
  double critical_delta = 0.0;
};

struct CorollaryLimits {
  double at_zero = 0.0;
  double at_critical = 0.0;
};

enum class SustainBranch {
  OneShotNash,      // delta == 0
  QuadraticRoot,    // 0 < delta < delta*
  FullCooperation,  // delta >= delta*
};

struct SustainResult {
  double effort = 0.0;
  SustainBranch branch = SustainBranch::OneShotNash;
};

/// Relative tolerance on the PV scale used by TriggerReport::is_spe.
inline constexpr double kSpeTolerance = 1e-12;

/// delta* = K^2 / (8 c2 l + K^2); in [1/2, 1), equal to 1/2 iff alpha c1 = 0.
double critical_delta(const GameParams& params);

double best_deviation_against(const GameParams& params, double x_bar);

/// Deviator's one-period payoff: (alpha/2)(x_bar + alpha (1 + c1 x_bar)^2 / (8 c2)).
double deviation_stage_payoff(const GameParams& params, double x_bar);

/// Cooperation vs. one-period deviation followed by Nash reversion.
/// Requires 0 <= delta < 1 and x_bar in [0, alpha].
TriggerReport trigger_report(const GameParams& params, double delta,
                             double x_bar);

/// Requires 0 < delta < 1.
SustainabilityQuadratic sustainability_quadratic(const GameParams& params,
                                                 double delta);

double max_sustainable_effort(const GameParams& params, double delta);
SustainResult sustainable_effort(const GameParams& params, double delta);

CorollaryLimits corollary_limits(const GameParams& params);

// Explicit larger-root formula
//   (alpha/K) (K^2 - delta a^2 c1^2 + 32 delta c2^2) / (K^2 - delta a^2 c1^2).
// Defined on [0, 1); at delta = 0 it is x*, at delta = delta* it is x-hat.
double upper_root_formula(const GameParams& params, double delta);

void require_delta(double delta);

}  // namespace pgame
