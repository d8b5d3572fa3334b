#include "pgame/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "pgame/equilibrium.hpp"
#include "pgame/error.hpp"
#include "pgame/numeric.hpp"
#include "pgame/trigger.hpp"

namespace pgame {

TriggerSpec make_trigger(const GameParams& params, double target) {
  require_effort(params, target, "target_effort");
  return {target, nash_equilibrium(params).x1, 1e-9 * params.alpha()};
}

void History::push(const GameParams& params, EffortProfile profile) {
  periods_.push_back({profile, stage_payoff(params, profile)});
}

std::vector<double> History::payoffs_of(int player) const {
  std::vector<double> out;
  out.reserve(periods_.size());
  for (const Period& p : periods_) {
    out.push_back(player == 1 ? p.payoffs.u1 : p.payoffs.u2);
  }
  return out;
}

double trigger_action(const TriggerSpec& spec, const History& history) {
  const auto on_path = [&](const Period& p) {
    return std::abs(p.profile.x1 - spec.target_effort) <= spec.tolerance &&
           std::abs(p.profile.x2 - spec.target_effort) <= spec.tolerance;
  };
  const auto periods = history.periods();
  return std::all_of(periods.begin(), periods.end(), on_path)
             ? spec.target_effort
             : spec.punishment_effort;
}

Strategy trigger_strategy(const TriggerSpec& spec) {
  return [spec](const History& h) { return trigger_action(spec, h); };
}

Strategy constant_strategy(double effort) {
  return [effort](const History&) { return effort; };
}

Strategy deviate_at(std::size_t period, double effort, Strategy otherwise) {
  return [period, effort, otherwise = std::move(otherwise)](const History& h) {
    return h.size() + 1 == period ? effort : otherwise(h);
  };
}

History play(const GameParams& params, const Strategy& s1, const Strategy& s2,
             std::size_t periods) {
  History history;
  for (std::size_t t = 1; t <= periods; ++t) {
    const EffortProfile profile{s1(history), s2(history)};
    for (const auto& [effort, who] :
         {std::pair{profile.x1, "player 1"}, std::pair{profile.x2, "player 2"}}) {
      if (!(effort >= 0.0 && effort <= params.alpha())) {
        throw Error(ErrorKind::StrategyReturnedOutOfRange, who,
                    std::string(who) + " strategy returned effort " +
                        std::to_string(effort) + " outside [0, alpha] in period " +
                        std::to_string(t));
      }
    }
    history.push(params, profile);
  }
  return history;
}

double discounted_value(std::span<const double> per_period, double delta,
                        std::optional<double> tail) {
  require_delta(delta);
  double pv = 0.0;
  double weight = 1.0;
  for (double u : per_period) {
    pv += weight * u;
    weight *= delta;
  }
  if (tail) {
    pv += weight * *tail / (1.0 - delta);
  }
  return pv;
}

PlayOutcome evaluate(History history, double delta, TailMode tail_mode) {
  PlayOutcome out;
  out.horizon = history.size();
  out.tail_mode = tail_mode;
  const std::vector<double> u1 = history.payoffs_of(1);
  const std::vector<double> u2 = history.payoffs_of(2);
  std::optional<double> tail1;
  std::optional<double> tail2;
  if (tail_mode == TailMode::ConstantTail && !history.empty()) {
    tail1 = u1.back();
    tail2 = u2.back();
  }
  out.pv1 = discounted_value(u1, delta, tail1);
  out.pv2 = discounted_value(u2, delta, tail2);
  out.history = std::move(history);
  return out;
}

PlayOutcome play_discounted(const GameParams& params, const Strategy& s1,
                            const Strategy& s2, std::size_t periods,
                            double delta) {
  require_delta(delta);
  const History full = play(params, s1, s2, periods + 1);
  const Period& next = full.at_period(periods + 1);

  History shown;
  for (std::size_t t = 1; t <= periods; ++t) {
    shown.push(params, full.at_period(t).profile);
  }
  PlayOutcome out;
  out.horizon = periods;
  out.tail_mode = TailMode::ConstantTail;
  out.pv1 = discounted_value(shown.payoffs_of(1), delta, next.payoffs.u1);
  out.pv2 = discounted_value(shown.payoffs_of(2), delta, next.payoffs.u2);
  out.history = std::move(shown);
  return out;
}

DeviationScan one_shot_deviation_scan(const GameParams& params, double delta,
                                      double x_bar, std::size_t grid_points) {
  require_delta(delta);
  require_effort(params, x_bar, "x_bar");
  if (grid_points < 2) {
    throw Error(ErrorKind::OutOfRange, "grid_points", "grid_points must be >= 2");
  }
  const TriggerSpec spec = make_trigger(params, x_bar);
  const Strategy conform = trigger_strategy(spec);

  // Both paths are constant from period 2 on, so two periods plus the
  // analytic tail give the infinite-horizon value.
  constexpr std::size_t kPeriods = 2;
  const double coop_pv =
      evaluate(play(params, conform, conform, kPeriods), delta,
               TailMode::ConstantTail)
          .pv2;
  const auto gain = [&](double y) {
    const History h = play(params, conform, deviate_at(1, y, conform), kPeriods);
    return evaluate(h, delta, TailMode::ConstantTail).pv2 - coop_pv;
  };

  const double alpha = params.alpha();
  const double step = alpha / static_cast<double>(grid_points - 1);
  DeviationScan best{0.0, -std::numeric_limits<double>::infinity()};
  std::size_t best_index = 0;
  // Efforts the trigger cannot tell apart from x_bar are not deviations.
  const auto is_deviation = [&](double y) {
    return std::abs(y - x_bar) > spec.tolerance;
  };
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double y =
        i + 1 == grid_points ? alpha : static_cast<double>(i) * step;
    if (!is_deviation(y)) continue;
    const double g = gain(y);
    if (g > best.best_gain) {
      best = {y, g};
      best_index = i;
    }
  }

  const double lo = best_index == 0 ? 0.0 : best.best_effort - step;
  const double hi = best_index + 1 == grid_points ? alpha : best.best_effort + step;
  const numeric::SolveReport refined =
      numeric::maximize_unimodal(gain, std::max(0.0, lo), std::min(alpha, hi),
                                 1e-12 * alpha);
  const double refined_gain = gain(refined.value);
  if (is_deviation(refined.value) && refined_gain > best.best_gain) {
    best = {refined.value, refined_gain};
  }
  return best;
}

}  // namespace pgame
