#include <cmath>
#include <limits>

#include "doctest.h"
#include "pgame/equilibrium.hpp"
#include "pgame/error.hpp"
#include "pgame/numeric.hpp"
#include "test_support.hpp"

using namespace pgame;
using namespace pgame::numeric;
using pgame::test::p0;
using pgame::test::p1;

TEST_CASE("maximize_unimodal finds known maximizers") {
  const SolveReport r =
      maximize_unimodal([](double x) { return -(x - 0.3) * (x - 0.3); }, 0, 1, 1e-8);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 0.3) <= 1e-8);
  CHECK(r.residual <= 1e-8);
  const int bound = static_cast<int>(
      std::ceil(std::log(1.0 / 1e-8) / std::log(1.0 / 0.618))) + 2;
  CHECK(r.iterations <= bound);

  const auto u2_vs = [](double opponent) {
    return [opponent](double x) { return stage_payoff(p0(), {opponent, x}).u2; };
  };
  CHECK(std::abs(maximize_unimodal(u2_vs(0.5), 0, 1, 1e-8).value - 0.25) <= 1e-6);
  CHECK(std::abs(maximize_unimodal(u2_vs(0.0), 0, 1, 1e-8).value - 1.0 / 6.0) <= 1e-6);
}

TEST_CASE("maximize_unimodal handles maximizers on the bracket edge") {
  CHECK(maximize_unimodal([](double x) { return x; }, 0, 1, 1e-10).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(maximize_unimodal([](double x) { return -x; }, 0, 1, 1e-10).value ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("maximize_unimodal error paths") {
  const auto f = [](double x) { return -x * x; };
  try {
    maximize_unimodal(f, 1, 1, 1e-8);
    FAIL("expected BadBracket");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadBracket);
  }
  try {
    maximize_unimodal(f, -1, 1, 1e-14, 5);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
  }
}

TEST_CASE("best_response_numeric reference values") {
  CHECK(std::abs(best_response_numeric(p0(), 0.2) - 0.2) <= 1e-6);
  CHECK(std::abs(best_response_numeric(p1(), 2.0 / 3.0) - 1.0 / 3.0) <= 2e-6);
  CHECK(std::abs(best_response_numeric(p0(), 0.0) - 1.0 / 6.0) <= 1e-6);
}

TEST_CASE("nash_fixed_point converges to the Nash effort") {
  const SolveReport r0 = nash_fixed_point(p0(), 1e-12, 100);
  CHECK(r0.converged);
  CHECK(std::abs(r0.value - 0.2) <= 1e-12);
  const SolveReport r1 = nash_fixed_point(p1(), 1e-12, 100);
  CHECK(std::abs(r1.value - 2.0 / 7.0) <= 1e-12);

  const SolveReport flat = nash_fixed_point(GameParams::unchecked(1, 0, 1.5), 1e-12, 100);
  CHECK(flat.iterations == 1);
  CHECK(flat.value == 1.0 / 6.0);
  CHECK(flat.residual == 0.0);

  CHECK_THROWS_AS(nash_fixed_point(p0(), 1e-12, 2), Error);
}

TEST_CASE("best-response iteration contracts by at most alpha c1 / (4 c2)") {
  for (const GameParams& p : pgame::test::sample(300, 13)) {
    const double factor = p.alpha() * p.c1() / (4 * p.c2());
    CHECK(factor <= 1.0 / 3.0 + 1e-15);
    double x = 0;
    double step = best_response_closed(p, x) - x;
    // Each step difference carries an absolute rounding error of a few ulps
    // of x, which the ratio bound must absorb once steps get small.
    const double rounding = 4 * std::numeric_limits<double>::epsilon() * p.alpha();
    for (int i = 0; i < 20 && std::abs(step) > 1e-15; ++i) {
      x += step;
      const double next = best_response_closed(p, x) - x;
      CHECK(std::abs(next) <= (factor + 1e-12) * std::abs(step) + rounding);
      step = next;
    }
    const SolveReport r = nash_fixed_point(p, 1e-14, 40);
    CHECK(std::abs(r.value - nash_equilibrium(p).x1) <= 1e-10);
  }
}

TEST_CASE("first-order condition holds at the closed-form best response") {
  verify::Rng rng(3);
  for (const GameParams& p : pgame::test::sample(300, 14)) {
    const double other = rng.uniform(0, p.alpha());
    const double br = best_response_closed(p, other);
    const double h = 1e-6 * p.alpha();
    const double slope = (stage_payoff(p, {br + h, other}).u1 -
                          stage_payoff(p, {br - h, other}).u1) /
                         (2 * h);
    CHECK(std::abs(slope) <= 1e-6);
  }
}

TEST_CASE("quadratic_roots_numeric") {
  const auto [lo, hi] = quadratic_roots_numeric(-1.03125, 0.5625, -0.07125);
  CHECK(lo == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(hi == doctest::Approx(19.0 / 55.0).epsilon(1e-12));

  const auto [a, b] = quadratic_roots_numeric(1, -3, 2);
  CHECK(a == 1.0);
  CHECK(b == 2.0);

  try {
    quadratic_roots_numeric(1, 0, 1);
    FAIL("expected NoRealRoots");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoRealRoots);
  }
  try {
    quadratic_roots_numeric(0, 1, 1);
    FAIL("expected DegenerateLeadingCoefficient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateLeadingCoefficient);
  }

  // The small root survives cancellation.
  const auto [small, big] = quadratic_roots_numeric(1, -1e8, 1);
  CHECK(small == doctest::Approx(1e-8).epsilon(1e-12));
  CHECK(big == doctest::Approx(1e8).epsilon(1e-12));
}
