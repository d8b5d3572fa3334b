#include "pgame/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "pgame/equilibrium.hpp"
#include "pgame/error.hpp"
#include "pgame/trigger.hpp"

namespace pgame {

ReportRow make_report_row(const GameParams& params,
                          std::optional<double> delta) {
  const EquilibriumReport eq = social_optimum(params);
  ReportRow row;
  row.alpha = params.alpha();
  row.c1 = params.c1();
  row.c2 = params.c2();
  row.x_star = eq.x_star;
  row.x_hat = eq.x_hat;
  row.u_star = eq.u_star;
  row.u_hat = eq.u_hat_per_player;
  row.delta_star = critical_delta(params);
  if (delta) {
    const TriggerReport tr = trigger_report(params, *delta, eq.x_hat);
    row.delta = *delta;
    row.x_bar_max = max_sustainable_effort(params, *delta);
    row.coop_pv = tr.coop_pv;
    row.dev_pv = tr.dev_pv;
    row.is_spe = tr.is_spe;
  }
  return row;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double value) {
  char buf[64];
  // Avoid printing "-0.000000".
  if (std::abs(value) < 5e-7) value = 0.0;
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

std::string csv_line(const ReportRow& row) {
  std::string out;
  const auto add = [&out](const std::string& s) {
    if (!out.empty()) out += ',';
    out += s;
  };
  add(format_number(row.alpha));
  add(format_number(row.c1));
  add(format_number(row.c2));
  add(cell(row.delta));
  add(format_number(row.x_star));
  add(format_number(row.x_hat));
  add(format_number(row.u_star));
  add(format_number(row.u_hat));
  add(format_number(row.delta_star));
  add(cell(row.x_bar_max));
  add(cell(row.coop_pv));
  add(cell(row.dev_pv));
  add(row.is_spe ? (*row.is_spe ? "true" : "false") : "");
  return out;
}

nlohmann::ordered_json to_json(const ReportRow& row) {
  const auto opt = [](const auto& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["alpha"] = row.alpha;
  j["c1"] = row.c1;
  j["c2"] = row.c2;
  j["delta"] = opt(row.delta);
  j["x_star"] = row.x_star;
  j["x_hat"] = row.x_hat;
  j["u_star"] = row.u_star;
  j["u_hat"] = row.u_hat;
  j["delta_star"] = row.delta_star;
  j["x_bar_max"] = opt(row.x_bar_max);
  j["coop_pv"] = opt(row.coop_pv);
  j["dev_pv"] = opt(row.dev_pv);
  j["is_spe"] = opt(row.is_spe);
  return j;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(ErrorKind::OutOfRange, std::string(what),
                "cannot parse '" + std::string(text) + "' as a number");
  }
  return v;
}

}  // namespace

GridRange GridRange::parse(std::string_view text) {
  const std::size_t first = text.find(':');
  if (first == std::string_view::npos) {
    return point(parse_double(text, "grid"));
  }
  const std::size_t second = text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw Error(ErrorKind::OutOfRange, "grid",
                "grid spec must be start:stop:step (got '" + std::string(text) +
                    "')");
  }
  GridRange r{parse_double(text.substr(0, first), "grid"),
              parse_double(text.substr(first + 1, second - first - 1), "grid"),
              parse_double(text.substr(second + 1), "grid")};
  if (!(r.step > 0.0)) {
    throw Error(ErrorKind::OutOfRange, "grid", "grid step must be > 0");
  }
  if (!(r.start <= r.stop)) {
    throw Error(ErrorKind::OutOfRange, "grid", "grid start must be <= stop");
  }
  return r;
}

std::vector<double> GridRange::values() const {
  std::vector<double> out;
  if (start == stop) {
    out.push_back(start);
    return out;
  }
  const double span = (stop - start) / step;
  const double snapped = std::round(span);
  const bool hits_stop = std::abs(span - snapped) <= 1e-9 * std::max(1.0, span);
  const auto n = static_cast<std::size_t>(hits_stop ? snapped : std::floor(span));
  for (std::size_t i = 0; i <= n; ++i) {
    out.push_back(hits_stop && i == n ? stop
                                      : start + static_cast<double>(i) * step);
  }
  return out;
}

SweepResult run_sweep(const SweepGrid& grid) {
  SweepResult result;
  std::vector<std::optional<double>> deltas;
  if (grid.delta) {
    for (double d : grid.delta->values()) deltas.emplace_back(d);
  } else {
    deltas.emplace_back(std::nullopt);
  }
  for (double alpha : grid.alpha.values()) {
    for (double c1 : grid.c1.values()) {
      for (double c2 : grid.c2.values()) {
        std::optional<GameParams> params;
        try {
          params = validate_params(alpha, c1, c2);
        } catch (const Error&) {
          result.skipped += deltas.size();
          continue;
        }
        for (const auto& delta : deltas) {
          if (delta && !(*delta >= 0.0 && *delta < 1.0)) {
            ++result.skipped;
            continue;
          }
          result.rows.push_back(make_report_row(*params, delta));
        }
      }
    }
  }
  return result;
}

}  // namespace pgame
