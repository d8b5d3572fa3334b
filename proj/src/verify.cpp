#include "pgame/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "pgame/equilibrium.hpp"
#include "pgame/numeric.hpp"
#include "pgame/report.hpp"
#include "pgame/simulate.hpp"
#include "pgame/trigger.hpp"

namespace pgame::verify {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

GameParams sample_params(Rng& rng) {
  const double alpha = std::exp(rng.uniform(std::log(0.25), std::log(4.0)));
  const double c1 = rng.uniform(0.0, 2.0 / alpha);
  const double c2 = rng.uniform(1.5, 2.0);
  return validate_params(alpha, c1, c2);
}

ClosedForms ClosedForms::library() {
  return {[](const GameParams& p) { return pgame::critical_delta(p); }};
}

namespace {

bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1e-300, std::abs(a), std::abs(b)});
}

struct CaseContext {
  const GameParams& params;
  Result& result;

  // Records one check; returns false (and stores the counterexample) if it
  // failed.
  bool check(bool ok, const char* name, std::optional<double> delta,
             const std::string& detail = {}) {
    ++result.checks;
    if (!ok && !result.failure) {
      result.failure = Counterexample{name, params.alpha(), params.c1(),
                                      params.c2(), delta, detail};
    }
    return ok;
  }
};

std::string pair_detail(double got, double want) {
  return "got " + format_number(got) + ", expected " + format_number(want);
}

bool run_case(const GameParams& p, Rng& rng, const ClosedForms& forms,
              Result& result) {
  CaseContext ctx{p, result};
  const double alpha = p.alpha();
  const EquilibriumReport eq = social_optimum(p);
  const double x_star = eq.x_star;
  const double x_hat = eq.x_hat;
  const double delta_star = forms.critical_delta(p);

  // One-shot analysis.
  const double br_at_star = best_response_closed(p, x_star);
  if (!ctx.check(std::abs(br_at_star - x_star) <= 1e-12 * alpha,
                 "fixed_point_identity", std::nullopt,
                 pair_detail(br_at_star, x_star)))
    return false;

  const double x_other = rng.uniform(0.0, alpha);
  const double br_closed = best_response_closed(p, x_other);
  const double br_numeric = numeric::best_response_numeric(p, x_other);
  if (!ctx.check(std::abs(br_closed - br_numeric) <= 1e-6 * alpha,
                 "best_response_oracle", std::nullopt,
                 pair_detail(br_numeric, br_closed)))
    return false;

  const numeric::SolveReport fp = numeric::nash_fixed_point(p);
  if (!ctx.check(fp.converged && std::abs(fp.value - x_star) <= 1e-10,
                 "nash_fixed_point", std::nullopt, pair_detail(fp.value, x_star)))
    return false;

  if (!ctx.check(x_star < x_hat && x_hat <= alpha * (1.0 + 1e-12), "ordering",
                 std::nullopt, pair_detail(x_star, x_hat)))
    return false;

  const BoundaryValues& bv = eq.boundary_values;
  const double surplus_scale = 1e-12 * std::max(1.0, alpha * alpha);
  if (!ctx.check(bv.u_at_hat >= bv.u_at_alpha_alpha - surplus_scale &&
                     bv.u_at_hat >= bv.u_at_00 - surplus_scale,
                 "boundary_dominance", std::nullopt))
    return false;

  const SecondOrderCertificate cert = second_order_certificate(p);
  if (!ctx.check(cert.concave && cert.hessian_det > 0.0, "hessian_positive",
                 std::nullopt))
    return false;

  // Critical discount factor.
  const double ac1 = alpha * p.c1();
  const double k = p.k();
  if (!ctx.check(std::abs(k * k - 8.0 * p.c2() * p.l() - ac1 * ac1) <=
                     1e-12 * k * k,
                 "threshold_identity", std::nullopt))
    return false;
  if (!ctx.check(delta_star >= 0.5 - 1e-15 && delta_star < 1.0,
                 "critical_delta_range", std::nullopt,
                 "delta* = " + format_number(delta_star)))
    return false;

  for (int j = 0; j < 50; ++j) {
    const double delta = j / 50.0;
    if (std::abs(delta - delta_star) <= 1e-9) continue;
    const bool spe = trigger_report(p, delta, x_hat).is_spe;
    if (!ctx.check(spe == (delta >= delta_star), "threshold_equivalence", delta,
                   std::string("is_spe = ") + (spe ? "true" : "false") +
                       ", delta* = " + format_number(delta_star)))
      return false;
  }

  // Stage-level deviation identities.
  const double dev_hat = deviation_stage_payoff(p, x_hat);
  const double bonus = p.c2() * alpha * alpha / (4.0 * p.l() * p.l());
  if (!ctx.check(rel_close(dev_hat - eq.u_hat_per_player, bonus, 1e-12),
                 "deviation_identity", std::nullopt,
                 pair_detail(dev_hat - eq.u_hat_per_player, bonus)))
    return false;

  const double x_bar = rng.uniform(0.0, alpha);
  const double dev_best = best_deviation_against(p, x_bar);
  const double u_dev = detail::stage_payoff_raw(p, {x_bar, dev_best}).u2;
  const double u_corner = stage_payoff(p, {x_bar, alpha}).u2;
  if (!ctx.check(u_dev >= u_corner - 1e-12 * std::max(1.0, std::abs(u_corner)),
                 "corner_dominance", std::nullopt))
    return false;
  if (!ctx.check(deviation_stage_payoff(p, x_bar) >=
                     stage_payoff(p, {x_bar, x_bar}).u2,
                 "deviation_dominance", std::nullopt))
    return false;

  // Sustainability quadratic below the threshold.
  const double delta_q = delta_star * rng.uniform(0.01, 0.99);
  const SustainabilityQuadratic q = sustainability_quadratic(p, delta_q);
  if (!ctx.check(rel_close(q.root_low, x_star, 1e-9), "root_identity", delta_q,
                 pair_detail(q.root_low, x_star)))
    return false;
  if (!ctx.check(rel_close(std::sqrt(q.discriminant), q.sqrt_disc, 1e-9),
                 "discriminant_identity", delta_q,
                 pair_detail(std::sqrt(q.discriminant), q.sqrt_disc)))
    return false;
  const auto [r_lo, r_hi] = numeric::quadratic_roots_numeric(q.a, q.b, q.c);
  if (!ctx.check(rel_close(r_lo, q.root_low, 1e-8) &&
                     rel_close(r_hi, q.root_high, 1e-8),
                 "oracle_triangle", delta_q, pair_detail(r_hi, q.root_high)))
    return false;
  if (!ctx.check(x_star < q.root_high && q.root_high < x_hat, "sandwich",
                 delta_q))
    return false;
  const TriggerReport at_root = trigger_report(p, delta_q, q.root_high);
  if (!ctx.check(std::abs(at_root.coop_pv - at_root.dev_pv) <=
                     1e-9 * std::max(1.0, std::abs(at_root.coop_pv)),
                 "indifference_at_root", delta_q))
    return false;

  const CorollaryLimits lim = corollary_limits(p);
  if (!ctx.check(rel_close(lim.at_zero, x_star, 1e-12) &&
                     rel_close(lim.at_critical, x_hat, 1e-9),
                 "corollary_limits", std::nullopt))
    return false;

  // Simulation against closed-form present values.
  const double delta_s = rng.uniform(0.0, 0.95);
  const double target = rng.uniform(x_star, x_hat);
  const TriggerReport tr = trigger_report(p, delta_s, target);
  const Strategy conform = trigger_strategy(make_trigger(p, target));
  const PlayOutcome coop = evaluate(play(p, conform, conform, 64), delta_s,
                                    TailMode::ConstantTail);
  const PlayOutcome dev = evaluate(
      play(p, conform, deviate_at(1, tr.dev_best_response, conform), 64),
      delta_s, TailMode::ConstantTail);
  if (!ctx.check(rel_close(coop.pv2, tr.coop_pv, 1e-9) &&
                     rel_close(dev.pv2, tr.dev_pv, 1e-9),
                 "simulation_agreement", delta_s,
                 pair_detail(dev.pv2, tr.dev_pv)))
    return false;

  // Numeric one-shot deviation scan on both sides of the threshold.
  const double delta_hi = std::min(0.99, delta_star + rng.uniform(0.0, 1.0 - delta_star));
  const DeviationScan above = one_shot_deviation_scan(p, delta_hi, x_hat, 201);
  if (!ctx.check(above.best_gain <= 1e-8, "scan_above_threshold", delta_hi,
                 "best_gain = " + format_number(above.best_gain)))
    return false;
  const DeviationScan below =
      one_shot_deviation_scan(p, delta_star / 2.0, x_hat, 201);
  if (!ctx.check(below.best_gain > 0.0, "scan_below_threshold",
                 delta_star / 2.0,
                 "best_gain = " + format_number(below.best_gain)))
    return false;

  return true;
}

}  // namespace

Result run(const Options& options) {
  Result result;
  Rng rng(options.seed);
  for (std::size_t i = 0; i < options.cases; ++i) {
    const GameParams p = sample_params(rng);
    ++result.cases;
    if (!run_case(p, rng, options.closed_forms, result)) break;
  }
  return result;
}

std::string describe(const Result& result, const Options& options) {
  std::ostringstream os;
  if (result.passed()) {
    os << "verify: PASS " << result.cases << " cases, " << result.checks
       << " checks, seed " << options.seed << '\n';
    return os.str();
  }
  const Counterexample& f = *result.failure;
  os << "verify: FAIL check " << f.check << " at case " << result.cases
     << " (seed " << options.seed << ")\n"
     << "  counterexample: alpha=" << format_number(f.alpha)
     << " c1=" << format_number(f.c1) << " c2=" << format_number(f.c2);
  if (f.delta) os << " delta=" << format_number(*f.delta);
  os << '\n';
  if (!f.detail.empty()) os << "  " << f.detail << '\n';
  return os.str();
}

}  // namespace pgame::verify
