#pragma once

#include <string_view>

namespace pgame {

// Parameters of the two-partner stage game
//   u_i(x1, x2) = alpha * ((x1 + x2) / 2 + c1 * x1 * x2 / 2) - c2 * x_i^2
// with efforts in [0, alpha]. Immutable once built.
class GameParams {
 public:
  // Strict construction: alpha > 0, 0 <= c1 <= 2/alpha, 3/2 <= c2 <= 2.
  // Throws Error(OutOfRange) naming the field and its admissible interval.
  static GameParams validated(double alpha, double c1, double c2);

  // Skips the range checks (alpha must still be positive and finite so the
  // effort interval is meaningful). Reports built from these are flagged.
  static GameParams unchecked(double alpha, double c1, double c2);

  double alpha() const noexcept { return alpha_; }
  double c1() const noexcept { return c1_; }
  double c2() const noexcept { return c2_; }
  bool is_checked() const noexcept { return checked_; }

  /// 2*c2 - alpha*c1; the social-optimum denominator. >= 1 for checked params.
  double l() const noexcept { return 2.0 * c2_ - alpha_ * c1_; }
  /// 4*c2 - alpha*c1; the Nash denominator.
  double k() const noexcept { return 4.0 * c2_ - alpha_ * c1_; }

  /// Copy with a different c1. The copy is always unchecked.
  GameParams with_c1(double c1) const { return {alpha_, c1, c2_, false}; }

 private:
  GameParams(double alpha, double c1, double c2, bool checked)
      : alpha_(alpha), c1_(c1), c2_(c2), checked_(checked) {}

  double alpha_;
  double c1_;
  double c2_;
  bool checked_;
};

GameParams validate_params(double alpha, double c1, double c2);

struct EffortProfile {
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const EffortProfile&, const EffortProfile&) = default;
};

struct StagePayoffs {
  double u1 = 0.0;
  double u2 = 0.0;

  friend bool operator==(const StagePayoffs&, const StagePayoffs&) = default;
};

// Throws Error(EffortOutOfRange) unless 0 <= effort <= alpha.
void require_effort(const GameParams& params, double effort,
                    std::string_view field);

StagePayoffs stage_payoff(const GameParams& params, EffortProfile profile);

/// u1 + u2 = alpha*(x1 + x2) + alpha*c1*x1*x2 - c2*(x1^2 + x2^2).
double joint_surplus(const GameParams& params, EffortProfile profile);

namespace detail {
// Formula evaluation without the effort-range check. Used where closed forms
// are evaluated at points that may leave [0, alpha] for unchecked params.
StagePayoffs stage_payoff_raw(const GameParams& params, EffortProfile profile);
double joint_surplus_raw(const GameParams& params, EffortProfile profile);
}  // namespace detail

}  // namespace pgame
