#include "pgame/numeric.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pgame/equilibrium.hpp"
#include "pgame/error.hpp"

namespace pgame::numeric {

SolveReport maximize_unimodal(const std::function<double(double)>& f,
                              double lo, double hi, double tol, int max_iter) {
  if (!(lo < hi)) {
    throw Error(ErrorKind::BadBracket, "bracket",
                "maximize_unimodal needs lo < hi");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::BadBracket, "tol", "maximize_unimodal needs tol > 0");
  }
  // 1/phi
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);

  SolveReport report;
  while ((b - a) / 2.0 > tol) {
    if (report.iterations >= max_iter) {
      report.value = (a + b) / 2.0;
      report.residual = (b - a) / 2.0;
      throw Error(ErrorKind::NoConvergence, "max_iter",
                  "golden section did not reach tol in " +
                      std::to_string(max_iter) + " iterations");
    }
    ++report.iterations;
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  // The endpoints are candidates too: a maximizer sitting on lo or hi is
  // only approached from inside by the bracket.
  double best = (a + b) / 2.0;
  double f_best = f(best);
  for (double edge : {lo, hi}) {
    if (std::abs(edge - best) <= tol) {
      const double fe = f(edge);
      if (fe > f_best) {
        best = edge;
        f_best = fe;
      }
    }
  }
  report.value = best;
  report.residual = (b - a) / 2.0;
  report.converged = true;
  return report;
}

double best_response_numeric(const GameParams& params, double x_other,
                             double tol) {
  require_effort(params, x_other, "x_other");
  const auto own_payoff = [&](double x) {
    return detail::stage_payoff_raw(params, {x, x_other}).u1;
  };
  return maximize_unimodal(own_payoff, 0.0, params.alpha(), tol).value;
}

SolveReport nash_fixed_point(const GameParams& params, double tol,
                             int max_iter) {
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::BadBracket, "tol", "nash_fixed_point needs tol > 0");
  }
  const double a = params.alpha();
  const double c1 = params.c1();
  const double c2 = params.c2();
  // Unclamped best-response map; checked params keep it inside [0, alpha/2].
  const auto respond = [&](double x) { return a * (1.0 + c1 * x) / (4.0 * c2); };

  SolveReport report;
  double x = 0.0;
  while (report.iterations < max_iter) {
    x = respond(x);
    ++report.iterations;
    report.residual = std::abs(respond(x) - x);
    if (report.residual <= tol) {
      report.value = x;
      report.converged = true;
      return report;
    }
  }
  throw Error(ErrorKind::NoConvergence, "max_iter",
              "best-response iteration did not converge in " +
                  std::to_string(max_iter) + " steps");
}

std::pair<double, double> quadratic_roots_numeric(double a, double b,
                                                  double c) {
  if (a == 0.0) {
    throw Error(ErrorKind::DegenerateLeadingCoefficient, "a",
                "leading coefficient is zero");
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    throw Error(ErrorKind::NoRealRoots, "discriminant",
                "quadratic has no real roots (discriminant " +
                    std::to_string(disc) + ")");
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    return {0.0, 0.0};  // b == c == 0
  }
  double r1 = q / a;
  double r2 = c / q;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

}  // namespace pgame::numeric
