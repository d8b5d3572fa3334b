#pragma once

#include <functional>
#include <utility>

#include "pgame/model.hpp"

namespace pgame::numeric {

struct SolveReport {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

inline constexpr double kArgmaxTolerance = 1e-8;
inline constexpr double kFixedPointTolerance = 1e-12;

// Golden-section search for the maximizer of a unimodal f on [lo, hi].
// `residual` is the half-width of the final bracket. Throws BadBracket when
// lo >= hi (or tol <= 0), NoConvergence when max_iter is exhausted.
SolveReport maximize_unimodal(const std::function<double(double)>& f,
                              double lo, double hi,
                              double tol = kArgmaxTolerance,
                              int max_iter = 500);

/// Argmax of u_1(., x_other) over [0, alpha] by golden section.
double best_response_numeric(const GameParams& params, double x_other,
                             double tol = kArgmaxTolerance);

// Iterated best response from x = 0. Stops once |B(x) - x| <= tol.
SolveReport nash_fixed_point(const GameParams& params,
                             double tol = kFixedPointTolerance,
                             int max_iter = 100);

// Real roots of a x^2 + b x + c in ascending order. Computes the larger
// magnitude root first and recovers the other from c / (a r).
std::pair<double, double> quadratic_roots_numeric(double a, double b,
                                                  double c);

}  // namespace pgame::numeric
