#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgame {

enum class ErrorKind {
  OutOfRange,
  EffortOutOfRange,
  DeltaOutOfRange,
  StrategyReturnedOutOfRange,
  BadBracket,
  NoConvergence,
  NoRealRoots,
  DegenerateLeadingCoefficient,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library is reported through this type. `field()` names
// the offending input where one exists ("c1", "delta", "x_bar", ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string field, const std::string& message)
      : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace pgame
