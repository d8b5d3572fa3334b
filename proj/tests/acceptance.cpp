// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/rational_oracle.hpp"
#include "pgame/cli.hpp"
#include "pgame/equilibrium.hpp"
#include "pgame/numeric.hpp"
#include "pgame/report.hpp"
#include "pgame/simulate.hpp"
#include "pgame/trigger.hpp"
#include "pgame/verify.hpp"

namespace {

using namespace pgame;
using oracle::Q;

// Collects failures for one criterion; only the first few are printed.
class Criterion {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_.push_back(what);
  }

  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

bool rel_close(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::max(std::abs(got), std::abs(want));
}

std::string describe(const GameParams& p) {
  return "alpha=" + format_number(p.alpha()) + " c1=" + format_number(p.c1()) +
         " c2=" + format_number(p.c2());
}

std::vector<GameParams> sample(std::size_t n, std::uint64_t seed) {
  verify::Rng rng(seed);
  std::vector<GameParams> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(verify::sample_params(rng));
  return out;
}

// ---------------------------------------------------------------------------

void closed_forms_at_p0(Criterion& c) {
  const oracle::Params op = oracle::p0();
  const GameParams p = validate_params(1, 1, 1.5);
  const Q quarter(1, 4);
  const oracle::Quadratic oq = oracle::no_deviation_polynomial(op, quarter);
  const auto oroots = oracle::roots(oq);
  const auto osqrt = oracle::exact_sqrt(oracle::discriminant(oq));
  c.expect(oroots && osqrt, "oracle discriminant is not a perfect square");
  if (!oroots || !osqrt) return;

  const EquilibriumReport eq = social_optimum(p);
  const SustainabilityQuadratic q = sustainability_quadratic(p, 0.25);
  const std::vector<std::tuple<const char*, double, Q>> values = {
      {"x_star", eq.x_star, oracle::nash_effort(op)},
      {"x_hat", eq.x_hat, oracle::optimal_effort(op)},
      {"u_star", eq.u_star, oracle::nash_payoff(op)},
      {"u_hat", eq.u_hat_per_player, oracle::optimal_payoff(op)},
      {"delta_star", critical_delta(p), oracle::critical_delta(op)},
      {"deviation_vs_x_hat", deviation_stage_payoff(p, eq.x_hat),
       oracle::deviation_payoff(op, oracle::optimal_effort(op))},
      {"x_bar_2(0.25)", max_sustainable_effort(p, 0.25), oroots->second},
      {"sqrt_disc(0.25)", q.sqrt_disc, *osqrt},
      {"sqrt(b^2-4ac)(0.25)", std::sqrt(q.discriminant), *osqrt},
  };
  for (const auto& [name, got, want] : values) {
    c.expect(rel_close(got, oracle::to_double(want), 1e-12),
             std::string(name) + ": got " + format_number(got) + ", oracle " +
                 format_number(oracle::to_double(want)));
  }
  // Spot-check the oracle itself against the stated reference values.
  c.expect(oracle::critical_delta(op) == Q(25, 49), "oracle delta* != 25/49");
  c.expect(oracle::deviation_payoff(op, Q(1, 2)) == Q(11, 32),
           "oracle deviation payoff != 0.34375");
  c.expect(*osqrt == Q(3, 20), "oracle sqrt disc != 0.15");
}

void oracle_equivalence(Criterion& c) {
  verify::Rng rng(1001);
  for (const GameParams& p : sample(1000, 2024)) {
    const double a = p.alpha();
    const double x_other = rng.uniform(0, a);
    const double closed = best_response_closed(p, x_other);
    const double numeric_br = numeric::best_response_numeric(p, x_other);
    c.expect(std::abs(closed - numeric_br) <= 1e-6 * a,
             "best response " + describe(p));

    const numeric::SolveReport fp = numeric::nash_fixed_point(p);
    c.expect(fp.converged && std::abs(fp.value - nash_equilibrium(p).x1) <= 1e-10,
             "fixed point " + describe(p));

    const double delta = critical_delta(p) * rng.uniform(0.001, 0.999);
    const SustainabilityQuadratic q = sustainability_quadratic(p, delta);
    const auto roots = numeric::quadratic_roots_numeric(q.a, q.b, q.c);
    c.expect(rel_close(roots.second, q.root_high, 1e-8),
             "x_bar_2 vs quadratic formula " + describe(p));
  }
}

void threshold_equivalence(Criterion& c) {
  for (const GameParams& p : sample(1000, 2024)) {
    const double ds = critical_delta(p);
    const double x_hat = optimal_effort(p);
    for (int j = 0; j < 50; ++j) {
      const double delta = j / 50.0;
      if (std::abs(delta - ds) <= 1e-9) continue;
      c.expect(trigger_report(p, delta, x_hat).is_spe == (delta >= ds),
               "delta=" + format_number(delta) + " " + describe(p));
    }
  }
}

void deviation_scan(Criterion& c) {
  verify::Rng rng(4);
  const auto params = sample(100, 77);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const GameParams& p = params[i];
    const double ds = critical_delta(p);
    const double x_hat = optimal_effort(p);
    // The first case sits exactly on the threshold.
    const double above = i == 0 ? ds : rng.uniform(ds, 0.99);
    const DeviationScan hi = one_shot_deviation_scan(p, above, x_hat, 2001);
    c.expect(hi.best_gain <= 1e-8, "gain " + format_number(hi.best_gain) +
                                       " at delta=" + format_number(above) +
                                       " " + describe(p));
    const DeviationScan lo = one_shot_deviation_scan(p, ds / 2, x_hat, 2001);
    c.expect(lo.best_gain > 0, "no profitable deviation at delta*/2 " + describe(p));
  }
}

void sustainability_structure(Criterion& c) {
  for (const GameParams& p : sample(100, 5150)) {
    const double a = p.alpha();
    const double ds = critical_delta(p);
    const double x_star = nash_equilibrium(p).x1;
    const double x_hat = optimal_effort(p);
    double previous = -1;
    for (int j = 1; j <= 20; ++j) {
      const double delta = ds * j / 21.0;
      const SustainabilityQuadratic q = sustainability_quadratic(p, delta);
      const std::string where = "delta=" + format_number(delta) + " " + describe(p);
      c.expect(rel_close(q.root_low, x_star, 1e-9), "root_low " + where);
      c.expect(x_star < q.root_high && q.root_high < x_hat, "sandwich " + where);
      c.expect(q.root_high > previous, "monotone " + where);
      previous = q.root_high;
      const TriggerReport at = trigger_report(p, delta, q.root_high);
      const double scale = std::max(1.0, std::abs(at.coop_pv));
      c.expect(std::abs(at.coop_pv - at.dev_pv) <= 1e-9 * scale,
               "indifference " + where);
      c.expect(!trigger_report(p, delta, q.root_high + 1e-4 * a).is_spe,
               "x_bar_2 + 1e-4 alpha sustainable " + where);
    }
  }
}

void corollary_limits_check(Criterion& c) {
  for (const GameParams& p : sample(100, 31337)) {
    const double a = p.alpha();
    const double near_zero = sustainability_quadratic(p, 1e-8).root_high;
    c.expect(std::abs(near_zero - nash_equilibrium(p).x1) <= 1e-5 * a,
             "delta -> 0 " + describe(p));
    c.expect(rel_close(corollary_limits(p).at_critical, optimal_effort(p), 1e-9),
             "delta -> delta* " + describe(p));
  }
}

void simulation_agreement(Criterion& c) {
  verify::Rng rng(8);
  for (const GameParams& p : sample(100, 606)) {
    const double delta = rng.uniform(0, 0.95);
    const double target = rng.uniform(nash_equilibrium(p).x1, optimal_effort(p));
    const TriggerReport r = trigger_report(p, delta, target);
    const Strategy conform = trigger_strategy(make_trigger(p, target));
    const PlayOutcome coop =
        evaluate(play(p, conform, conform, 64), delta, TailMode::ConstantTail);
    const PlayOutcome dev = evaluate(
        play(p, conform, deviate_at(1, r.dev_best_response, conform), 64), delta,
        TailMode::ConstantTail);
    const std::string where = "delta=" + format_number(delta) + " " + describe(p);
    c.expect(rel_close(coop.pv2, r.coop_pv, 1e-9), "coop_pv " + where);
    c.expect(rel_close(dev.pv2, r.dev_pv, 1e-9), "dev_pv " + where);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int invoke(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream os;
  std::ostringstream err;
  const int code = cli::run(args, os, err);
  out = os.str();
  return code;
}

void cli_contract(Criterion& c) {
  const std::filesystem::path dir = PGAME_GOLDEN_DIR;
  const std::vector<std::string> p0{"--alpha", "1", "--c1", "1", "--c2", "1.5"};
  const std::vector<std::string> p1{"--alpha", "2", "--c1", "0.5", "--c2", "2"};
  const auto with = [](std::vector<std::string> head,
                       const std::vector<std::string>& params,
                       const std::vector<std::string>& tail) {
    head.insert(head.end(), params.begin(), params.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  const std::vector<std::pair<std::string, std::vector<std::string>>> golden = {
      {"analyze_p0.txt", with({"analyze"}, p0, {})},
      {"analyze_p1.txt", with({"analyze"}, p1, {})},
      {"sustain_p0.txt", with({"sustain"}, p0, {"--delta", "0.25"})},
      {"sustain_p1.txt", with({"sustain"}, p1, {"--delta", "0.3"})},
      {"simulate_p0.txt",
       with({"simulate"}, p0,
            {"--delta", "0.5", "--periods", "3", "--deviate-at", "1",
             "--deviation", "0.25"})},
      {"simulate_p1.txt",
       with({"simulate"}, p1, {"--delta", "0.6", "--periods", "4", "--deviate-at", "2"})},
  };
  for (const auto& [file, args] : golden) {
    std::string out;
    const int code = invoke(args, out);
    c.expect(code == 0 && out == read_file(dir / file), "golden " + file);
  }

  // CSV round trip: every numeric cell parses back to the in-memory value.
  SweepGrid grid;
  grid.alpha = GridRange::parse("0.5:2:0.5");
  grid.c1 = GridRange::parse("0:4:0.35");
  grid.c2 = GridRange::parse("1.5:2:0.125");
  grid.delta = GridRange::parse("0:0.95:0.05");
  const SweepResult sweep = run_sweep(grid);
  c.expect(!sweep.rows.empty(), "sweep produced no rows");
  for (const ReportRow& row : sweep.rows) {
    const auto cells = split_csv_line(csv_line(row));
    const std::vector<std::optional<double>> values = {
        row.alpha, row.c1, row.c2, row.delta, row.x_star, row.x_hat,
        row.u_star, row.u_hat, row.delta_star, row.x_bar_max, row.coop_pv,
        row.dev_pv};
    c.expect(cells.size() == 13, "csv cell count");
    for (std::size_t i = 0; i < values.size() && i < cells.size(); ++i) {
      if (!values[i]) {
        c.expect(cells[i].empty(), "missing value must be an empty cell");
        continue;
      }
      const double parsed = std::strtod(cells[i].c_str(), nullptr);
      c.expect(std::abs(parsed - *values[i]) <= 1e-12 * std::abs(*values[i]),
               "csv round trip of " + cells[i]);
    }
  }

  std::string out;
  c.expect(invoke({"verify", "--cases", "1000", "--seed", "42"}, out) == 0,
           "verify --cases 1000 --seed 42: " + out);
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> criteria = {
      {"1 closed-form reproduction at P0 (rel 1e-12 vs rational oracle)", closed_forms_at_p0},
      {"2 oracle equivalence over 1000 params", oracle_equivalence},
      {"3 threshold equivalence, 1000 params x 50 deltas", threshold_equivalence},
      {"4 one-shot deviation scan on both sides of delta*", deviation_scan},
      {"5 sustainability quadratic structure, 100 params x 20 deltas", sustainability_structure},
      {"6 corollary limits at delta -> 0 and delta -> delta*", corollary_limits_check},
      {"7 simulation vs closed-form present values", simulation_agreement},
      {"8 CLI contract (golden files, CSV round trip, verify)", cli_contract},
  };

  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (const Entry& e : criteria) {
    Criterion c;
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    const bool ok = c.failures() == 0 && c.checks() > 0;
    std::printf("[%s] %s (%zu checks, %zu failures)\n", ok ? "PASS" : "FAIL",
                e.name, c.checks(), c.failures());
    for (const std::string& note : c.notes()) std::printf("       %s\n", note.c_str());
    if (!ok) ++failed;
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  std::printf("%d of %zu criteria failed (%.2fs)\n", failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
