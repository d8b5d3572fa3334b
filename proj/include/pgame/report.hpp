#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pgame/model.hpp"

namespace pgame {

inline constexpr std::string_view kCsvHeader =
    "alpha,c1,c2,delta,x_star,x_hat,u_star,u_hat,delta_star,x_bar_max,"
    "coop_pv,dev_pv,is_spe";

// One line of analysis output. Delta-dependent fields are empty when no
// delta was supplied. coop_pv/dev_pv/is_spe are evaluated at target x_hat.
struct ReportRow {
  double alpha = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> delta;
  double x_star = 0.0;
  double x_hat = 0.0;
  double u_star = 0.0;
  double u_hat = 0.0;
  double delta_star = 0.0;
  std::optional<double> x_bar_max;
  std::optional<double> coop_pv;
  std::optional<double> dev_pv;
  std::optional<bool> is_spe;
};

ReportRow make_report_row(const GameParams& params,
                          std::optional<double> delta);

/// Shortest decimal that parses back to the same double.
std::string format_number(double value);
/// Fixed six-decimal rendering used by the table output.
std::string format_fixed(double value);

std::string csv_line(const ReportRow& row);
nlohmann::ordered_json to_json(const ReportRow& row);

std::vector<std::string> split_csv_line(std::string_view line);

// start:stop:step, inclusive of stop when (stop - start) is a multiple of
// step within rel 1e-9. A bare number is a one-point range.
struct GridRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  static GridRange parse(std::string_view text);
  static GridRange point(double v) { return {v, v, 1.0}; }
  std::vector<double> values() const;
};

struct SweepGrid {
  GridRange alpha = GridRange::point(1.0);
  GridRange c1 = GridRange::point(1.0);
  GridRange c2 = GridRange::point(1.5);
  std::optional<GridRange> delta;
};

struct SweepResult {
  std::vector<ReportRow> rows;
  std::size_t skipped = 0;
};

// Rows in lexicographic (alpha, c1, c2, delta) order. Points failing
// validate_params, or with delta outside [0, 1), are skipped and counted.
SweepResult run_sweep(const SweepGrid& grid);

}  // namespace pgame
