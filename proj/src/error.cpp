#include "pgame/error.hpp"

namespace pgame {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EffortOutOfRange: return "EffortOutOfRange";
    case ErrorKind::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorKind::StrategyReturnedOutOfRange: return "StrategyReturnedOutOfRange";
    case ErrorKind::BadBracket: return "BadBracket";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NoRealRoots: return "NoRealRoots";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
  }
  return "Unknown";
}

}  // namespace pgame
