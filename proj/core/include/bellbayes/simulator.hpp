#pragma once

// Monte Carlo sequential experiments. Each replication draws i.i.d. trials
// from the "true" theory, folds every outcome into the LR:QM odds with Bayes'
// rule, and stops as soon as the odds leave (lower, upper):
//
//   odds <= lower  -> LR rejected
//   odds >= upper  -> QM rejected
//
// The check runs after each trial's update. With the default protocol
// (prior 100, lower 0.01) the GHZ walk is deterministic and stops at trial 33,
// the first n with n ln(4/3) >= ln(10^4).

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bellbayes/bayes_core.hpp"
#include "bellbayes/scenarios.hpp"

namespace bellbayes {

enum class TrueTheory { QM, LR };
enum class Decision { LrRejected, QmRejected, Inconclusive };

const char* to_string(TrueTheory theory) noexcept;
const char* to_string(Decision decision) noexcept;

struct SimulationConfig {
  ScenarioSpec scenario = ScenarioSpec::ghz();
  /// Replaces the scenario's (q, r) when set; used for synthetic pairs.
  std::optional<BernoulliHypothesisPair> pair_override;
  TrueTheory true_theory = TrueTheory::QM;
  OddsRatio prior_odds{100.0};
  double lower_threshold = 0.01;
  double upper_threshold = 1e6;
  std::uint64_t max_trials = 100'000;
  std::uint64_t master_seed = 0;
  std::uint64_t replications = 1000;
  /// Worker threads for run_replications; 0 means hardware concurrency.
  /// Results do not depend on it.
  unsigned threads = 1;
  /// Only used to resolve Hardy scenarios.
  double target_d = 1e4;
};

struct Trajectory {
  std::vector<bool> outcomes;
  std::vector<double> cumulative_log_d;  ///< ln D after each trial
  Decision decision = Decision::Inconclusive;
  std::uint64_t stop_trial = 0;          ///< 1-based; max_trials when inconclusive

  double final_log_d() const noexcept {
    return cumulative_log_d.empty() ? 0.0 : cumulative_log_d.back();
  }
};

/// What run_replications keeps from each trajectory.
struct ReplicationSummary {
  std::uint64_t replication = 0;
  std::uint64_t stop_trial = 0;
  Decision decision = Decision::Inconclusive;
  double final_log_d = 0.0;

  friend bool operator==(const ReplicationSummary&, const ReplicationSummary&) = default;
};

struct StoppingReport {
  std::uint64_t replications = 0;
  double mean_stop = 0.0;
  double stddev_stop = 0.0;  ///< sample standard deviation; 0 for one replication
  double stop_q05 = 0.0;
  double stop_q50 = 0.0;
  double stop_q95 = 0.0;
  /// Indexed by Decision.
  std::array<std::uint64_t, 3> decision_counts{};
  std::uint64_t total_trials = 0;
  /// sum(final ln D) / sum(stop_trial): the pooled per-trial log factor.
  /// Infinite if any replication ended on a falsifying observation.
  double mean_log_d_per_trial = 0.0;
  /// Ratio-estimator standard error of mean_log_d_per_trial; NaN below two replications.
  double stderr_log_d_per_trial = 0.0;

  std::uint64_t count(Decision d) const noexcept { return decision_counts[static_cast<int>(d)]; }

  friend bool operator==(const StoppingReport&, const StoppingReport&) = default;
};

class Simulator {
 public:
  /// Validates the config and resolves the scenario. Throws InvalidArgument
  /// unless 0 < lower < prior < upper, max_trials >= 1, replications >= 1,
  /// and the pair is not the degenerate q = r in {0, 1}.
  explicit Simulator(SimulationConfig config);

  const SimulationConfig& config() const noexcept { return config_; }
  const BernoulliHypothesisPair& pair() const noexcept { return pair_; }

  Trajectory run_trajectory(std::uint64_t replication_index) const;
  ReplicationSummary run_summary(std::uint64_t replication_index) const;
  /// One summary per replication, in index order.
  std::vector<ReplicationSummary> run_all() const;
  StoppingReport run_replications() const { return summarize(run_all()); }

  static StoppingReport summarize(const std::vector<ReplicationSummary>& summaries);

 private:
  ReplicationSummary walk(std::uint64_t replication_index, Trajectory* record) const;

  SimulationConfig config_;
  BernoulliHypothesisPair pair_;
  double yes_probability_;
  std::array<LogBayesFactor, 2> step_;  ///< [no, yes] single-trial ln D
};

Trajectory run_trajectory(const SimulationConfig& config, std::uint64_t replication_index);
StoppingReport run_replications(const SimulationConfig& config);

/// ln(prior / lower) / kl_per_trial(pair): the drift approximation to the
/// stopping time under QM, ignoring overshoot. 0 when prior <= lower.
double expected_stop_estimate(const BernoulliHypothesisPair& pair, OddsRatio prior,
                              double lower_threshold);

}  // namespace bellbayes
