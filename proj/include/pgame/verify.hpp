#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "pgame/model.hpp"

namespace pgame::verify {

// Portable seeded generator (splitmix64). Same seed, same stream everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

// alpha log-uniform on [0.25, 4], c1 uniform on [0, 2/alpha], c2 uniform on
// [1.5, 2]. Always returns validated params.
GameParams sample_params(Rng& rng);

// The closed forms under test. Swappable so the failure path of the suite can
// be exercised with a deliberately wrong formula.
struct ClosedForms {
  std::function<double(const GameParams&)> critical_delta;

  static ClosedForms library();
};

struct Options {
  std::size_t cases = 1000;
  std::uint64_t seed = 42;
  ClosedForms closed_forms = ClosedForms::library();
};

struct Counterexample {
  std::string check;
  double alpha = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> delta;
  std::string detail;
};

struct Result {
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::optional<Counterexample> failure;  // first one found; stops the run

  bool passed() const { return !failure.has_value(); }
};

Result run(const Options& options);

std::string describe(const Result& result, const Options& options);

}  // namespace pgame::verify
