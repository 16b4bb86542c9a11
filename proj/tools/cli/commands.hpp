#pragma once

// The `bellbayes` command-line front-end as a library: every subcommand
// renders into caller-provided streams so tests can drive it in-process.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bellbayes/scenarios.hpp"
#include "bellbayes/simulator.hpp"

namespace bellbayes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

struct AnalyzeResult {
  std::string scenario;
  double q = 0.0;
  double r = 0.0;
  /// +infinity for hardy-naive, whose LR theory forbids the QM-allowed
  /// setup-1 coincidence; serialized as null.
  double kl_nats = 0.0;
  double target_d = 0.0;
  /// For hardy-naive: the mean number of trials until the first coincidence
  /// (1/q), after which D is infinite.
  double n_real = 0.0;
  std::uint64_t n_ceil = 0;
  nlohmann::json extras = nlohmann::json::object();

  nlohmann::json to_json() const;
};

AnalyzeResult analyze(const ScenarioSpec& spec, double target_d);

/// Shortest decimal text that parses back to exactly x ("inf", "-inf", "nan"
/// for non-finite values).
std::string format_number(double x);

/// Header `k,theta,q,r,kl_nats,n_real`, one row per k.
std::string sweep_csv(int k_min, int k_max, double target_d);

struct CompareRow {
  std::string scenario;
  double q;
  double r;
  double kl_nats;
  std::optional<double> n_real;
  std::optional<int> naive_trials_50pct;
};

/// Rows in fixed order: ghz, chained-k2, chained-k4, hardy-paper, hardy-naive.
std::vector<CompareRow> compare_rows(double target_d);
std::string compare_csv(const std::vector<CompareRow>& rows);
std::string compare_text(const std::vector<CompareRow>& rows);

nlohmann::json simulation_json(const Simulator& simulator, const StoppingReport& report);
nlohmann::json trajectory_json(const ReplicationSummary& summary);

/// Parses `args` (without the program name) and runs the subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bellbayes::cli
