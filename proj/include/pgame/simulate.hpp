#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pgame/model.hpp"

namespace pgame {

// Grim trigger: play target_effort while every past profile is
// (target, target) within `tolerance`, otherwise punishment_effort forever.
struct TriggerSpec {
  double target_effort = 0.0;
  double punishment_effort = 0.0;
  double tolerance = 0.0;
};

/// Trigger at `target` with Nash reversion and tolerance 1e-9 * alpha.
TriggerSpec make_trigger(const GameParams& params, double target);

struct Period {
  EffortProfile profile;
  StagePayoffs payoffs;
};

// Play record h^t. Periods are numbered from 1.
class History {
 public:
  History() = default;

  void push(const GameParams& params, EffortProfile profile);

  std::size_t size() const noexcept { return periods_.size(); }
  bool empty() const noexcept { return periods_.empty(); }
  const Period& at_period(std::size_t t) const { return periods_.at(t - 1); }
  std::span<const Period> periods() const noexcept { return periods_; }

  std::vector<double> payoffs_of(int player) const;

 private:
  std::vector<Period> periods_;
};

/// A pure strategy maps the public history to an effort.
using Strategy = std::function<double(const History&)>;

double trigger_action(const TriggerSpec& spec, const History& history);

Strategy trigger_strategy(const TriggerSpec& spec);
Strategy constant_strategy(double effort);
/// Plays `effort` in period `period`, otherwise defers to `otherwise`.
Strategy deviate_at(std::size_t period, double effort, Strategy otherwise);

// Simultaneous play: both strategies see the same pre-period history.
// Throws StrategyReturnedOutOfRange if an effort leaves [0, alpha].
History play(const GameParams& params, const Strategy& s1, const Strategy& s2,
             std::size_t periods);

/// sum_t delta^(t-1) u_t, plus delta^T * tail / (1 - delta) when given.
double discounted_value(std::span<const double> per_period, double delta,
                        std::optional<double> tail = std::nullopt);

enum class TailMode { None, ConstantTail };

struct PlayOutcome {
  History history;
  double pv1 = 0.0;
  double pv2 = 0.0;
  std::size_t horizon = 0;
  TailMode tail_mode = TailMode::None;
};

// Discounts a finished trace. ConstantTail extends the last period's payoffs
// forever, which is exact on eventually-constant paths.
PlayOutcome evaluate(History history, double delta, TailMode tail_mode);

// Plays periods + 1 periods and discounts the first `periods`, using the
// payoffs of period periods + 1 as the constant tail. Exact whenever play is
// constant from period periods + 1 on (trigger paths once any scripted
// deviation lies within the horizon). The returned history holds `periods`.
PlayOutcome play_discounted(const GameParams& params, const Strategy& s1,
                            const Strategy& s2, std::size_t periods,
                            double delta);

struct DeviationScan {
  double best_effort = 0.0;
  double best_gain = 0.0;
};

// Player 2 deviates once in period 1 to each effort on a uniform grid over
// [0, alpha] (then follows the trigger); player 1 follows the trigger at x_bar.
// Grid efforts within the trigger tolerance of x_bar are not deviations and
// are skipped. The best grid point is refined by golden section on its two
// neighbouring cells. best_gain = deviation PV - cooperation PV.
DeviationScan one_shot_deviation_scan(const GameParams& params, double delta,
                                      double x_bar, std::size_t grid_points);

}  // namespace pgame
