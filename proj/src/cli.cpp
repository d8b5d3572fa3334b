#include "pgame/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pgame/equilibrium.hpp"
#include "pgame/error.hpp"
#include "pgame/model.hpp"
#include "pgame/report.hpp"
#include "pgame/simulate.hpp"
#include "pgame/trigger.hpp"
#include "pgame/verify.hpp"

namespace pgame::cli {
namespace {

using json = nlohmann::ordered_json;

struct ParamFlags {
  double alpha = 1.0;
  double c1 = 1.0;
  double c2 = 1.5;
  bool unchecked = false;

  GameParams build() const {
    return unchecked ? GameParams::unchecked(alpha, c1, c2)
                     : validate_params(alpha, c1, c2);
  }
};

void add_param_flags(CLI::App& cmd, ParamFlags& flags) {
  cmd.add_option("--alpha", flags.alpha, "effort scale alpha > 0")
      ->capture_default_str();
  cmd.add_option("--c1", flags.c1, "complementarity c1 in [0, 2/alpha]")
      ->capture_default_str();
  cmd.add_option("--c2", flags.c2, "effort cost c2 in [1.5, 2]")
      ->capture_default_str();
  cmd.add_flag("--unchecked", flags.unchecked,
               "skip parameter range validation (results are flagged)");
}

void add_format_flag(CLI::App& cmd, std::string& format) {
  cmd.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
}

// Two-column key/value table.
class Table {
 public:
  Table& row(std::string key, std::string value) {
    rows_.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Table& num(std::string key, double value) {
    return row(std::move(key), format_fixed(value));
  }

  void print(std::ostream& os) const {
    std::size_t width = 0;
    for (const auto& r : rows_) width = std::max(width, r.first.size());
    for (const auto& [k, v] : rows_) {
      os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string csv_cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

double resolve_target(const GameParams& params, const std::string& target) {
  if (target == "xhat") return optimal_effort(params);
  if (target == "xstar") return nash_equilibrium(params).x1;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(target, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != target.size() || target.empty()) {
    throw Error(ErrorKind::OutOfRange, "target",
                "--target must be xhat, xstar or a number (got '" + target +
                    "')");
  }
  return v;
}

void print_unchecked_banner(const GameParams& params, std::ostream& out,
                            const std::string& format) {
  if (!params.is_checked() && format == "table") {
    out << "WARNING: unchecked parameters, closed forms may not be maxima\n";
  }
}

// ---- analyze -------------------------------------------------------------

struct AnalyzeArgs {
  ParamFlags params;
  std::optional<double> delta;
  std::string format = "table";
};

void cmd_analyze(const AnalyzeArgs& args, std::ostream& out) {
  const GameParams p = args.params.build();
  const EquilibriumReport eq = social_optimum(p);
  const SecondOrderCertificate cert = second_order_certificate(p);
  const ReportRow row = make_report_row(p, args.delta);

  if (args.format == "csv") {
    out << kCsvHeader << '\n' << csv_line(row) << '\n';
    return;
  }
  if (args.format == "json") {
    json j = to_json(row);
    j["joint_at_hat"] = eq.joint_at_hat;
    j["hessian_det"] = eq.hessian_det;
    j["d2_own"] = cert.d2_own;
    j["concave"] = cert.concave;
    j["u_at_00"] = eq.boundary_values.u_at_00;
    j["u_at_alpha_alpha"] = eq.boundary_values.u_at_alpha_alpha;
    j["unchecked"] = eq.unchecked;
    out << j.dump(2) << '\n';
    return;
  }
  print_unchecked_banner(p, out, args.format);
  Table t;
  t.row("alpha", format_number(p.alpha()))
      .row("c1", format_number(p.c1()))
      .row("c2", format_number(p.c2()))
      .num("x_star", eq.x_star)
      .num("u_star", eq.u_star)
      .num("x_hat", eq.x_hat)
      .num("u_hat", eq.u_hat_per_player)
      .num("joint_at_hat", eq.joint_at_hat)
      .num("u_at_00", eq.boundary_values.u_at_00)
      .num("u_at_alpha_alpha", eq.boundary_values.u_at_alpha_alpha)
      .num("d2_own", cert.d2_own)
      .num("hessian_det", cert.hessian_det)
      .row("concave", bool_str(cert.concave))
      .num("delta_star", row.delta_star);
  if (row.delta) {
    t.num("delta", *row.delta)
        .num("x_bar_max", *row.x_bar_max)
        .num("coop_pv", *row.coop_pv)
        .num("dev_pv", *row.dev_pv)
        .row("is_spe", bool_str(*row.is_spe));
  }
  t.print(out);
}

// ---- threshold -----------------------------------------------------------

struct ThresholdArgs {
  ParamFlags params;
  std::string format = "table";
};

void cmd_threshold(const ThresholdArgs& args, std::ostream& out) {
  const GameParams p = args.params.build();
  const double ds = critical_delta(p);
  if (args.format == "json") {
    json j;
    j["alpha"] = p.alpha();
    j["c1"] = p.c1();
    j["c2"] = p.c2();
    j["k"] = p.k();
    j["l"] = p.l();
    j["delta_star"] = ds;
    j["unchecked"] = !p.is_checked();
    out << j.dump(2) << '\n';
    return;
  }
  if (args.format == "csv") {
    out << "alpha,c1,c2,k,l,delta_star\n"
        << format_number(p.alpha()) << ',' << format_number(p.c1()) << ','
        << format_number(p.c2()) << ',' << format_number(p.k()) << ','
        << format_number(p.l()) << ',' << format_number(ds) << '\n';
    return;
  }
  print_unchecked_banner(p, out, args.format);
  Table()
      .num("k", p.k())
      .num("l", p.l())
      .num("delta_star", ds)
      .row("spe_region", "[" + format_fixed(ds) + ", 1)")
      .print(out);
}

// ---- sustain -------------------------------------------------------------

struct SustainArgs {
  ParamFlags params;
  double delta = 0.0;
  std::string format = "table";
};

std::string branch_label(SustainBranch b) {
  switch (b) {
    case SustainBranch::OneShotNash: return "one-shot Nash";
    case SustainBranch::QuadraticRoot: return "below-threshold quadratic root";
    case SustainBranch::FullCooperation: return "full cooperation (δ ≥ δ*)";
  }
  return "";
}

void cmd_sustain(const SustainArgs& args, std::ostream& out) {
  const GameParams p = args.params.build();
  const SustainResult s = sustainable_effort(p, args.delta);
  std::optional<SustainabilityQuadratic> q;
  if (s.branch == SustainBranch::QuadraticRoot) {
    q = sustainability_quadratic(p, args.delta);
  }
  const double ds = critical_delta(p);
  const auto qfield = [&](double SustainabilityQuadratic::*m) {
    return q ? std::optional<double>((*q).*m) : std::nullopt;
  };
  const std::vector<std::pair<std::string, std::optional<double>>> quad = {
      {"a", qfield(&SustainabilityQuadratic::a)},
      {"b", qfield(&SustainabilityQuadratic::b)},
      {"c", qfield(&SustainabilityQuadratic::c)},
      {"discriminant", qfield(&SustainabilityQuadratic::discriminant)},
      {"sqrt_disc", qfield(&SustainabilityQuadratic::sqrt_disc)},
      {"root_low", qfield(&SustainabilityQuadratic::root_low)},
      {"root_high", qfield(&SustainabilityQuadratic::root_high)},
  };

  if (args.format == "csv") {
    out << "delta,delta_star,x_star,x_hat,x_bar_max,branch";
    for (const auto& [k, v] : quad) out << ',' << k;
    out << '\n'
        << format_number(args.delta) << ',' << format_number(ds) << ','
        << format_number(nash_equilibrium(p).x1) << ','
        << format_number(optimal_effort(p)) << ',' << format_number(s.effort)
        << ',' << branch_label(s.branch);
    for (const auto& [k, v] : quad) out << ',' << csv_cell(v);
    out << '\n';
    return;
  }
  if (args.format == "json") {
    json j;
    j["delta"] = args.delta;
    j["delta_star"] = ds;
    j["x_star"] = nash_equilibrium(p).x1;
    j["x_hat"] = optimal_effort(p);
    j["x_bar_max"] = s.effort;
    j["branch"] = branch_label(s.branch);
    for (const auto& [k, v] : quad) j[k] = v ? json(*v) : json(nullptr);
    j["unchecked"] = !p.is_checked();
    out << j.dump(2) << '\n';
    return;
  }
  print_unchecked_banner(p, out, args.format);
  Table t;
  t.num("delta", args.delta)
      .num("delta_star", ds)
      .num("x_star", nash_equilibrium(p).x1)
      .num("x_hat", optimal_effort(p))
      .num("x_bar_max", s.effort)
      .row("branch", branch_label(s.branch));
  for (const auto& [k, v] : quad) {
    if (v) t.num(k, *v);
  }
  t.print(out);
}

// ---- spe -----------------------------------------------------------------

struct SpeArgs {
  ParamFlags params;
  double delta = 0.0;
  std::string target = "xhat";
  std::size_t grid = 2001;
  std::string format = "table";
};

void cmd_spe(const SpeArgs& args, std::ostream& out) {
  const GameParams p = args.params.build();
  const double x_bar = resolve_target(p, args.target);
  const TriggerReport r = trigger_report(p, args.delta, x_bar);
  const DeviationScan scan =
      one_shot_deviation_scan(p, args.delta, x_bar, args.grid);

  const std::vector<std::pair<std::string, double>> nums = {
      {"delta", r.delta},
      {"target_effort", r.target_effort},
      {"coop_pv", r.coop_pv},
      {"dev_best_response", r.dev_best_response},
      {"dev_stage_payoff", r.dev_stage_payoff},
      {"dev_pv", r.dev_pv},
      {"critical_delta", r.critical_delta},
      {"scan_best_effort", scan.best_effort},
      {"scan_best_gain", scan.best_gain},
  };
  if (args.format == "csv") {
    for (const auto& [k, v] : nums) out << k << ',';
    out << "is_spe\n";
    for (const auto& [k, v] : nums) out << format_number(v) << ',';
    out << bool_str(r.is_spe) << '\n';
    return;
  }
  if (args.format == "json") {
    json j;
    for (const auto& [k, v] : nums) j[k] = v;
    j["is_spe"] = r.is_spe;
    j["unchecked"] = !p.is_checked();
    out << j.dump(2) << '\n';
    return;
  }
  print_unchecked_banner(p, out, args.format);
  Table t;
  t.row("target", args.target);
  for (const auto& [k, v] : nums) t.num(k, v);
  t.row("is_spe", bool_str(r.is_spe)).print(out);
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
  ParamFlags params;
  double delta = 0.0;
  std::size_t periods = 10;
  std::size_t deviate_at = 0;
  std::optional<double> deviation;
  std::string target = "xhat";
  std::string format = "table";
};

void cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  const GameParams p = args.params.build();
  if (args.periods < 1) {
    throw Error(ErrorKind::OutOfRange, "periods", "--periods must be >= 1");
  }
  if (args.deviation && args.deviate_at == 0) {
    throw Error(ErrorKind::OutOfRange, "deviate_at",
                "--deviation requires --deviate-at");
  }
  if (args.deviate_at > args.periods) {
    throw Error(ErrorKind::OutOfRange, "deviate_at",
                "--deviate-at must lie within --periods");
  }
  const double x_bar = resolve_target(p, args.target);
  const Strategy conform = trigger_strategy(make_trigger(p, x_bar));
  Strategy player2 = conform;
  if (args.deviate_at > 0) {
    const double effort = args.deviation.value_or(best_deviation_against(p, x_bar));
    require_effort(p, effort, "deviation");
    player2 = deviate_at(args.deviate_at, effort, conform);
  }
  const PlayOutcome outcome =
      play_discounted(p, conform, player2, args.periods, args.delta);

  if (args.format == "csv") {
    out << "t,x1,x2,u1,u2\n";
    std::size_t t = 1;
    for (const Period& row : outcome.history.periods()) {
      out << t++ << ',' << format_number(row.profile.x1) << ','
          << format_number(row.profile.x2) << ','
          << format_number(row.payoffs.u1) << ','
          << format_number(row.payoffs.u2) << '\n';
    }
    return;
  }
  if (args.format == "json") {
    json j;
    j["delta"] = args.delta;
    j["target_effort"] = x_bar;
    j["periods"] = outcome.horizon;
    j["tail_mode"] = "constant_tail";
    json rows = json::array();
    for (const Period& row : outcome.history.periods()) {
      rows.push_back({{"x1", row.profile.x1},
                      {"x2", row.profile.x2},
                      {"u1", row.payoffs.u1},
                      {"u2", row.payoffs.u2}});
    }
    j["trace"] = rows;
    j["pv1"] = outcome.pv1;
    j["pv2"] = outcome.pv2;
    j["unchecked"] = !p.is_checked();
    out << j.dump(2) << '\n';
    return;
  }
  print_unchecked_banner(p, out, args.format);
  out << "t  x1        x2        u1        u2\n";
  std::size_t t = 1;
  for (const Period& row : outcome.history.periods()) {
    out << t++ << "  " << format_fixed(row.profile.x1) << "  "
        << format_fixed(row.profile.x2) << "  " << format_fixed(row.payoffs.u1)
        << "  " << format_fixed(row.payoffs.u2) << '\n';
  }
  Table()
      .num("delta", args.delta)
      .row("tail", "constant from period " + std::to_string(args.periods + 1))
      .num("pv1", outcome.pv1)
      .num("pv2", outcome.pv2)
      .print(out);
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  std::string alpha = "1";
  std::string c1 = "1";
  std::string c2 = "1.5";
  std::optional<std::string> delta;
  std::optional<std::string> out_path;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  SweepGrid grid;
  grid.alpha = GridRange::parse(args.alpha);
  grid.c1 = GridRange::parse(args.c1);
  grid.c2 = GridRange::parse(args.c2);
  if (args.delta) grid.delta = GridRange::parse(*args.delta);

  const SweepResult result = run_sweep(grid);
  if (result.rows.empty()) {
    err << "sweep: empty grid (" << result.skipped
        << " points skipped as invalid)\n";
    return kExitUsage;
  }

  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  for (const ReportRow& row : result.rows) csv << csv_line(row) << '\n';

  if (args.out_path) {
    std::ofstream file(*args.out_path);
    if (!file) {
      err << "sweep: cannot write " << *args.out_path << '\n';
      return kExitUsage;
    }
    file << csv.str();
    if (!file) {
      err << "sweep: write to " << *args.out_path << " failed\n";
      return kExitUsage;
    }
  } else {
    out << csv.str();
  }
  err << "sweep: " << result.rows.size() << " rows, " << result.skipped
      << " skipped\n";
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

}  // namespace

int run_verify(const verify::Options& options, std::ostream& out) {
  const verify::Result result = verify::run(options);
  out << verify::describe(result, options);
  return result.passed() ? kExitOk : kExitVerifyFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Repeated partnership game analysis", "pgame"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "Nash equilibrium, social optimum and delta*");
  add_param_flags(*analyze_cmd, analyze.params);
  analyze_cmd->add_option("--delta", analyze.delta,
                          "also evaluate grim trigger at x_hat for this delta");
  add_format_flag(*analyze_cmd, analyze.format);

  ThresholdArgs threshold;
  auto* threshold_cmd =
      app.add_subcommand("threshold", "critical discount factor for x_hat");
  add_param_flags(*threshold_cmd, threshold.params);
  add_format_flag(*threshold_cmd, threshold.format);

  SustainArgs sustain;
  auto* sustain_cmd =
      app.add_subcommand("sustain", "maximal effort sustainable by grim trigger");
  add_param_flags(*sustain_cmd, sustain.params);
  sustain_cmd->add_option("--delta", sustain.delta, "discount factor in [0, 1)")
      ->required();
  add_format_flag(*sustain_cmd, sustain.format);

  SpeArgs spe;
  auto* spe_cmd =
      app.add_subcommand("spe", "check grim trigger at a target effort");
  add_param_flags(*spe_cmd, spe.params);
  spe_cmd->add_option("--delta", spe.delta, "discount factor in [0, 1)")
      ->required();
  spe_cmd->add_option("--target", spe.target, "xhat, xstar or an effort")
      ->capture_default_str();
  spe_cmd->add_option("--grid", spe.grid, "deviation scan grid points")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}))
      ->capture_default_str();
  add_format_flag(*spe_cmd, spe.format);

  SimulateArgs simulate;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "play grim trigger, optionally with a deviation");
  add_param_flags(*simulate_cmd, simulate.params);
  simulate_cmd->add_option("--delta", simulate.delta, "discount factor in [0, 1)")
      ->required();
  simulate_cmd->add_option("--periods", simulate.periods, "periods to print")
      ->capture_default_str();
  simulate_cmd->add_option("--deviate-at", simulate.deviate_at,
                           "period in which player 2 deviates (0 = never)");
  simulate_cmd->add_option("--deviation", simulate.deviation,
                           "player 2's deviation effort (default: best response)");
  simulate_cmd->add_option("--target", simulate.target, "xhat, xstar or an effort")
      ->capture_default_str();
  add_format_flag(*simulate_cmd, simulate.format);

  SweepArgs sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "CSV of report rows over a parameter grid");
  sweep_cmd->add_option("--alpha", sweep.alpha, "value or start:stop:step")
      ->capture_default_str();
  sweep_cmd->add_option("--c1", sweep.c1, "value or start:stop:step")
      ->capture_default_str();
  sweep_cmd->add_option("--c2", sweep.c2, "value or start:stop:step")
      ->capture_default_str();
  sweep_cmd->add_option("--delta", sweep.delta, "value or start:stop:step");
  sweep_cmd->add_option("--out", sweep.out_path, "CSV path (default: stdout)");
  std::string sweep_format = "csv";
  sweep_cmd->add_option("--format", sweep_format, "output format")
      ->check(CLI::IsMember({"csv"}))
      ->capture_default_str();

  std::size_t verify_cases = 1000;
  std::uint64_t verify_seed = 42;
  auto* verify_cmd =
      app.add_subcommand("verify", "randomized cross-check of every closed form");
  verify_cmd->add_option("--cases", verify_cases, "parameter sets to sample")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "generator seed")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pgame: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) {
      cmd_analyze(analyze, out);
    } else if (threshold_cmd->parsed()) {
      cmd_threshold(threshold, out);
    } else if (sustain_cmd->parsed()) {
      cmd_sustain(sustain, out);
    } else if (spe_cmd->parsed()) {
      cmd_spe(spe, out);
    } else if (simulate_cmd->parsed()) {
      cmd_simulate(simulate, out);
    } else if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep, out, err);
    } else if (verify_cmd->parsed()) {
      verify::Options opts;
      opts.cases = verify_cases;
      opts.seed = verify_seed;
      return run_verify(opts, out);
    }
  } catch (const Error& e) {
    err << "pgame: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace pgame::cli
