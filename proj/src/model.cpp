#include "pgame/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "pgame/error.hpp"

namespace pgame {
namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

[[noreturn]] void out_of_range(const std::string& field, double value,
                               const std::string& interval) {
  throw Error(ErrorKind::OutOfRange, field,
              field + " out of range " + interval + " (got " + fmt_num(value) +
                  ")");
}

// Slack for the derived bound l >= 1: alpha*c1 may round one ulp above 2.
constexpr double kDerivedBoundSlack = 1e-12;

}  // namespace

GameParams GameParams::validated(double alpha, double c1, double c2) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    out_of_range("alpha", alpha, "(0, inf)");
  }
  const double c1_max = 2.0 / alpha;
  if (!(c1 >= 0.0 && c1 <= c1_max)) {
    out_of_range("c1", c1, "[0, " + fmt_num(c1_max) + "]");
  }
  if (!(c2 >= 1.5 && c2 <= 2.0)) {
    out_of_range("c2", c2, "[1.5, 2]");
  }
  GameParams p(alpha, c1, c2, true);
  if (p.l() < 1.0 - kDerivedBoundSlack) {
    out_of_range("l", p.l(), "[1, inf) for l = 2*c2 - alpha*c1");
  }
  return p;
}

GameParams GameParams::unchecked(double alpha, double c1, double c2) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    out_of_range("alpha", alpha, "(0, inf)");
  }
  return GameParams(alpha, c1, c2, false);
}

GameParams validate_params(double alpha, double c1, double c2) {
  return GameParams::validated(alpha, c1, c2);
}

void require_effort(const GameParams& params, double effort,
                    std::string_view field) {
  if (!(effort >= 0.0 && effort <= params.alpha())) {
    throw Error(ErrorKind::EffortOutOfRange, std::string(field),
                std::string(field) + " out of range [0, " +
                    fmt_num(params.alpha()) + "] (got " + fmt_num(effort) +
                    ")");
  }
}

namespace detail {

StagePayoffs stage_payoff_raw(const GameParams& params, EffortProfile profile) {
  const double a = params.alpha();
  // The shared term is symmetric in (x1, x2) in floating point too, so
  // swapping the profile swaps the payoffs bit for bit.
  const double shared =
      a * ((profile.x1 + profile.x2) / 2.0 +
           params.c1() * (profile.x1 * profile.x2) / 2.0);
  return {shared - params.c2() * profile.x1 * profile.x1,
          shared - params.c2() * profile.x2 * profile.x2};
}

double joint_surplus_raw(const GameParams& params, EffortProfile profile) {
  const StagePayoffs u = stage_payoff_raw(params, profile);
  return u.u1 + u.u2;
}

}  // namespace detail

StagePayoffs stage_payoff(const GameParams& params, EffortProfile profile) {
  require_effort(params, profile.x1, "x1");
  require_effort(params, profile.x2, "x2");
  return detail::stage_payoff_raw(params, profile);
}

double joint_surplus(const GameParams& params, EffortProfile profile) {
  require_effort(params, profile.x1, "x1");
  require_effort(params, profile.x2, "x2");
  return detail::joint_surplus_raw(params, profile);
}

}  // namespace pgame
