#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bellbayes/error.hpp"
#include "bellbayes/random_streams.hpp"

namespace bellbayes::cli {
namespace {

using nlohmann::json;

constexpr double kDefaultTarget = 1e4;
constexpr double kNaiveSurvival = 0.5;

void require_target(double target_d) {
  if (!(target_d > 1.0) || !std::isfinite(target_d)) {
    throw InvalidArgument("--target-d must be a finite number above 1, got " + format_number(target_d));
  }
}

json pair_json(const BernoulliHypothesisPair& pair) { return json::array({pair.q(), pair.r()}); }

// Flags shared by analyze and simulate that pick a scenario.
struct ScenarioFlags {
  std::string scenario = "ghz";
  int k = 2;
  std::string hardy_mode = "paper";

  void attach(CLI::App& app) {
    app.add_option("--scenario", scenario, "Bell scenario")
        ->check(CLI::IsMember({"ghz", "chained", "hardy", "hardy-naive"}))
        ->capture_default_str();
    app.add_option("--k", k, "directions per observer (chained)")->capture_default_str();
    app.add_option("--hardy-mode", hardy_mode, "scoring of Hardy setups 2-4")
        ->check(CLI::IsMember({"paper", "literal"}))
        ->capture_default_str();
  }

  ScenarioSpec spec() const {
    if (scenario == "ghz") return ScenarioSpec::ghz();
    if (scenario == "chained") return ScenarioSpec::chained(k);
    if (scenario == "hardy") {
      return ScenarioSpec::hardy(hardy_mode == "paper" ? HardyMode::Paper : HardyMode::Literal);
    }
    return ScenarioSpec::hardy_naive();
  }
};

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, result.ptr);
}

json AnalyzeResult::to_json() const {
  // nlohmann serializes non-finite numbers as null.
  return json{{"scenario", scenario}, {"q", q},           {"r", r},
              {"kl_nats", kl_nats},   {"target_d", target_d}, {"n_real", n_real},
              {"n_ceil", n_ceil},     {"extras", extras}};
}

AnalyzeResult analyze(const ScenarioSpec& spec, double target_d) {
  require_target(target_d);
  const ScenarioResolution resolved = scenario_pair(spec, target_d);

  AnalyzeResult result;
  result.scenario = spec.tag();
  result.q = resolved.pair.q();
  result.r = resolved.pair.r();
  result.target_d = target_d;

  if (spec.kind() == ScenarioKind::HardyNaive) {
    result.kl_nats = std::numeric_limits<double>::infinity();
    result.n_real = 1.0 / resolved.pair.q();
    result.n_ceil = static_cast<std::uint64_t>(std::ceil(result.n_real));
    result.extras = {{"n_basis", "mean trials until the first setup-1 coincidence falsifies LR"},
                     {"naive_trials_50pct", hardy_naive_trials(kNaiveSurvival)}};
    return result;
  }

  result.kl_nats = kl_per_trial(resolved.pair);
  result.n_real = required_trials(resolved.pair, target_d);
  result.n_ceil = required_trials_ceil(resolved.pair, target_d);
  if (resolved.geometry) {
    result.extras = {{"k", resolved.geometry->k}, {"theta", resolved.geometry->theta}};
  }
  if (resolved.hardy) {
    const HardySolution& h = *resolved.hardy;
    json setups = json::array();
    for (const BernoulliHypothesisPair& s : h.setups) setups.push_back(pair_json(s));
    result.extras = {{"mode", to_string(h.mode)},
                     {"r_opt", h.r_opt},
                     {"bisection_iterations", h.iterations},
                     {"setups", std::move(setups)}};
  }
  return result;
}

std::string sweep_csv(int k_min, int k_max, double target_d) {
  require_target(target_d);
  if (k_min < 2 || k_max < k_min) {
    throw InvalidArgument("k range must satisfy 2 <= k-min <= k-max");
  }
  std::ostringstream csv;
  csv << "k,theta,q,r,kl_nats,n_real\n";
  for (int k = k_min; k <= k_max; ++k) {
    const ChainedGeometry geometry = ChainedGeometry::for_k(k);
    const BernoulliHypothesisPair pair = chained_pair(k);
    csv << k << ',' << format_number(geometry.theta) << ',' << format_number(pair.q()) << ','
        << format_number(pair.r()) << ',' << format_number(kl_per_trial(pair)) << ','
        << format_number(required_trials(pair, target_d)) << '\n';
  }
  return csv.str();
}

std::vector<CompareRow> compare_rows(double target_d) {
  require_target(target_d);
  std::vector<CompareRow> rows;
  for (const ScenarioSpec& spec : {ScenarioSpec::ghz(), ScenarioSpec::chained(2), ScenarioSpec::chained(4),
                                   ScenarioSpec::hardy(HardyMode::Paper)}) {
    const BernoulliHypothesisPair pair = scenario_pair(spec, target_d).pair;
    rows.push_back({spec.tag(), pair.q(), pair.r(), kl_per_trial(pair), required_trials(pair, target_d),
                    std::nullopt});
  }
  rows.push_back({ScenarioSpec::hardy_naive().tag(), hardy_q(), 0.0, std::numeric_limits<double>::infinity(),
                  std::nullopt, hardy_naive_trials(kNaiveSurvival)});
  return rows;
}

namespace {

std::vector<std::vector<std::string>> compare_cells(const std::vector<CompareRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"scenario", "q", "r", "kl_nats", "n_real", "naive_trials_50pct"});
  for (const CompareRow& row : rows) {
    cells.push_back({row.scenario, format_number(row.q), format_number(row.r), format_number(row.kl_nats),
                     row.n_real ? format_number(*row.n_real) : "",
                     row.naive_trials_50pct ? std::to_string(*row.naive_trials_50pct) : ""});
  }
  return cells;
}

}  // namespace

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream csv;
  for (const auto& line : compare_cells(rows)) {
    for (std::size_t i = 0; i < line.size(); ++i) csv << (i ? "," : "") << line[i];
    csv << '\n';
  }
  return csv.str();
}

std::string compare_text(const std::vector<CompareRow>& rows) {
  auto cells = compare_cells(rows);
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i].empty()) line[i] = "-";
      width[i] = std::max(width[i], line[i].size());
    }
  }
  std::ostringstream text;
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) text << "  ";
      text << (i == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[i])) << line[i];
    }
    text << '\n';
  }
  text << "naive_trials_50pct: setup-1 trials after which an all-zero LR theory survives with < 50%\n";
  return text.str();
}

json simulation_json(const Simulator& simulator, const StoppingReport& report) {
  const SimulationConfig& c = simulator.config();
  json config = {{"scenario", c.scenario.tag()},
                 {"q", simulator.pair().q()},
                 {"r", simulator.pair().r()},
                 {"true_theory", to_string(c.true_theory)},
                 {"prior_ratio", c.prior_odds.ratio()},
                 {"lower", c.lower_threshold},
                 {"upper", c.upper_threshold},
                 {"max_trials", c.max_trials},
                 {"replications", c.replications},
                 {"seed", c.master_seed},
                 {"target_d", c.target_d}};
  json counts = json::object();
  for (Decision d : {Decision::LrRejected, Decision::QmRejected, Decision::Inconclusive}) {
    counts[to_string(d)] = report.count(d);
  }
  return {{"config", std::move(config)},
          {"generator", kGeneratorName},
          {"replications", report.replications},
          {"mean_stop", report.mean_stop},
          {"stddev_stop", report.stddev_stop},
          {"quantiles", {{"q05", report.stop_q05}, {"q50", report.stop_q50}, {"q95", report.stop_q95}}},
          {"decision_counts", std::move(counts)},
          {"total_trials", report.total_trials},
          {"mean_log_d_per_trial", report.mean_log_d_per_trial},
          {"stderr_log_d_per_trial", report.stderr_log_d_per_trial}};
}

json trajectory_json(const ReplicationSummary& summary) {
  return {{"replication", summary.replication},
          {"stop_trial", summary.stop_trial},
          {"decision", to_string(summary.decision)},
          {"final_log_d", summary.final_log_d}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian strength of Bell inequalities: trials needed to depress local realism",
               "bellbayes"};
  app.require_subcommand(1);

  double target_d = kDefaultTarget;

  auto* analyze_cmd = app.add_subcommand("analyze", "q, r, KL and required trials for one scenario (JSON)");
  ScenarioFlags analyze_flags;
  analyze_flags.attach(*analyze_cmd);
  analyze_cmd->add_option("--target-d", target_d, "target depressing factor D")->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "required trials across chained k (CSV)");
  std::string sweep_scenario = "chained";
  int k_min = 2;
  int k_max = 12;
  sweep_cmd->add_option("--scenario", sweep_scenario)->check(CLI::IsMember({"chained"}))->capture_default_str();
  sweep_cmd->add_option("--k-min", k_min)->capture_default_str();
  sweep_cmd->add_option("--k-max", k_max)->capture_default_str();
  sweep_cmd->add_option("--target-d", target_d)->capture_default_str();

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo sequential experiments (JSON)");
  ScenarioFlags sim_flags;
  sim_flags.attach(*simulate_cmd);
  std::string true_theory = "qm";
  double prior = 100.0;
  double lower = 0.01;
  double upper = 1e6;
  std::uint64_t max_trials = 100'000;
  std::uint64_t reps = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string dump_path;
  simulate_cmd->add_option("--true-theory", true_theory)->check(CLI::IsMember({"qm", "lr"}))->capture_default_str();
  simulate_cmd->add_option("--prior-ratio", prior, "prior LR:QM odds")->capture_default_str();
  simulate_cmd->add_option("--lower", lower, "LR rejected at odds <= lower")->capture_default_str();
  simulate_cmd->add_option("--upper", upper, "QM rejected at odds >= upper")->capture_default_str();
  simulate_cmd->add_option("--max-trials", max_trials)->capture_default_str();
  simulate_cmd->add_option("--reps", reps)->capture_default_str();
  simulate_cmd->add_option("--seed", seed)->capture_default_str();
  simulate_cmd->add_option("--threads", threads, "worker threads, 0 = all cores; output is unaffected")
      ->capture_default_str();
  simulate_cmd->add_option("--target-d", target_d)->capture_default_str();
  simulate_cmd->add_option("--dump-trajectories", dump_path, "write one JSON line per replication");

  auto* compare_cmd = app.add_subcommand("compare", "headline comparison across scenarios");
  std::string format = "csv";
  compare_cmd->add_option("--target-d", target_d)->capture_default_str();
  compare_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "text"}))->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) {
      out << analyze(analyze_flags.spec(), target_d).to_json().dump() << '\n';
    } else if (sweep_cmd->parsed()) {
      out << sweep_csv(k_min, k_max, target_d);
    } else if (compare_cmd->parsed()) {
      const auto rows = compare_rows(target_d);
      out << (format == "csv" ? compare_csv(rows) : compare_text(rows));
    } else if (simulate_cmd->parsed()) {
      require_target(target_d);
      SimulationConfig config;
      config.scenario = sim_flags.spec();
      config.true_theory = true_theory == "qm" ? TrueTheory::QM : TrueTheory::LR;
      config.prior_odds = OddsRatio{prior};
      config.lower_threshold = lower;
      config.upper_threshold = upper;
      config.max_trials = max_trials;
      config.replications = reps;
      config.master_seed = seed;
      config.threads = threads;
      config.target_d = target_d;
      const Simulator simulator(config);

      std::ofstream dump;
      if (!dump_path.empty()) {
        dump.open(dump_path);
        if (!dump) throw InvalidArgument("cannot open " + dump_path + " for writing");
      }
      const std::vector<ReplicationSummary> summaries = simulator.run_all();
      if (dump.is_open()) {
        for (const ReplicationSummary& s : summaries) dump << trajectory_json(s).dump() << '\n';
      }
      out << simulation_json(simulator, Simulator::summarize(summaries)).dump() << '\n';
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace bellbayes::cli
