#include "bellbayes/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "bellbayes/error.hpp"
#include "bellbayes/random_streams.hpp"

namespace bellbayes {
namespace {

BernoulliHypothesisPair resolve_pair(const SimulationConfig& config) {
  if (config.pair_override) return *config.pair_override;
  return scenario_pair(config.scenario, config.target_d).pair;
}

const SimulationConfig& validated(const SimulationConfig& config) {
  const double prior = config.prior_odds.ratio();
  if (!(config.lower_threshold > 0.0 && config.lower_threshold < prior && prior < config.upper_threshold)) {
    throw InvalidArgument("thresholds must satisfy 0 < lower < prior < upper (lower=" +
                          std::to_string(config.lower_threshold) + ", prior=" + std::to_string(prior) +
                          ", upper=" + std::to_string(config.upper_threshold) + ")");
  }
  if (config.max_trials < 1) throw InvalidArgument("max_trials must be at least 1");
  if (config.replications < 1) throw InvalidArgument("replications must be at least 1");
  return config;
}

// Type-7 (linear interpolation) sample quantile of sorted data.
double quantile(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

const char* to_string(TrueTheory theory) noexcept { return theory == TrueTheory::QM ? "qm" : "lr"; }

const char* to_string(Decision decision) noexcept {
  switch (decision) {
    case Decision::LrRejected: return "LrRejected";
    case Decision::QmRejected: return "QmRejected";
    case Decision::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

Simulator::Simulator(SimulationConfig config)
    : config_(validated(config)), pair_(resolve_pair(config_)), yes_probability_(0.0) {
  if (pair_.q() == pair_.r() && (pair_.q() == 0.0 || pair_.q() == 1.0)) {
    throw InvalidArgument("degenerate pair q = r = " + std::to_string(pair_.q()) +
                          ": one outcome would falsify both hypotheses");
  }
  yes_probability_ = config_.true_theory == TrueTheory::QM ? pair_.q() : pair_.r();
  step_[0] = log_depressing_factor(pair_, TrialTally{1, 0});
  step_[1] = log_depressing_factor(pair_, TrialTally{1, 1});
}

ReplicationSummary Simulator::walk(std::uint64_t replication_index, Trajectory* record) const {
  ReplicationStream stream(config_.master_seed, replication_index);
  ReplicationSummary summary;
  summary.replication = replication_index;

  LogBayesFactor cumulative;
  for (std::uint64_t trial = 1; trial <= config_.max_trials; ++trial) {
    const bool yes = stream.bernoulli(yes_probability_);
    cumulative += step_[yes ? 1 : 0];
    if (record != nullptr) {
      record->outcomes.push_back(yes);
      record->cumulative_log_d.push_back(cumulative.value);
    }

    const double odds = update_odds(config_.prior_odds, cumulative).ratio();
    summary.stop_trial = trial;
    if (odds <= config_.lower_threshold) {
      summary.decision = Decision::LrRejected;
      break;
    }
    if (odds >= config_.upper_threshold) {
      summary.decision = Decision::QmRejected;
      break;
    }
  }
  summary.final_log_d = cumulative.value;
  if (record != nullptr) {
    record->decision = summary.decision;
    record->stop_trial = summary.stop_trial;
  }
  return summary;
}

Trajectory Simulator::run_trajectory(std::uint64_t replication_index) const {
  if (replication_index >= config_.replications) {
    throw InvalidArgument("replication index " + std::to_string(replication_index) +
                          " out of range for " + std::to_string(config_.replications) + " replications");
  }
  Trajectory trajectory;
  walk(replication_index, &trajectory);
  return trajectory;
}

ReplicationSummary Simulator::run_summary(std::uint64_t replication_index) const {
  return walk(replication_index, nullptr);
}

std::vector<ReplicationSummary> Simulator::run_all() const {
  const std::uint64_t count = config_.replications;
  std::vector<ReplicationSummary> summaries(count);

  unsigned workers = config_.threads == 0 ? std::thread::hardware_concurrency() : config_.threads;
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, count));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < count; ++i) summaries[i] = walk(i, nullptr);
    return summaries;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t i = w; i < count; i += workers) summaries[i] = walk(i, nullptr);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summaries;
}

StoppingReport Simulator::summarize(const std::vector<ReplicationSummary>& summaries) {
  StoppingReport report;
  const std::size_t n = summaries.size();
  report.replications = n;
  if (n == 0) return report;

  std::vector<double> stops;
  stops.reserve(n);
  double sum_log_d = 0.0;
  for (const ReplicationSummary& s : summaries) {
    stops.push_back(static_cast<double>(s.stop_trial));
    report.total_trials += s.stop_trial;
    sum_log_d += s.final_log_d;
    ++report.decision_counts[static_cast<int>(s.decision)];
  }

  double sum_stop = 0.0;
  for (double t : stops) sum_stop += t;
  report.mean_stop = sum_stop / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double t : stops) ss += (t - report.mean_stop) * (t - report.mean_stop);
    report.stddev_stop = std::sqrt(ss / static_cast<double>(n - 1));
  }

  std::vector<double> sorted = stops;
  std::sort(sorted.begin(), sorted.end());
  report.stop_q05 = quantile(sorted, 0.05);
  report.stop_q50 = quantile(sorted, 0.50);
  report.stop_q95 = quantile(sorted, 0.95);

  const double ratio = sum_log_d / static_cast<double>(report.total_trials);
  report.mean_log_d_per_trial = ratio;
  if (n > 1 && std::isfinite(ratio)) {
    // Delta-method standard error of a ratio of sums over i.i.d. replications.
    double ss = 0.0;
    for (const ReplicationSummary& s : summaries) {
      const double resid = s.final_log_d - ratio * static_cast<double>(s.stop_trial);
      ss += resid * resid;
    }
    const double nn = static_cast<double>(n);
    report.stderr_log_d_per_trial = std::sqrt(ss / (nn * (nn - 1.0))) / report.mean_stop;
  } else {
    report.stderr_log_d_per_trial = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

Trajectory run_trajectory(const SimulationConfig& config, std::uint64_t replication_index) {
  return Simulator(config).run_trajectory(replication_index);
}

StoppingReport run_replications(const SimulationConfig& config) {
  return Simulator(config).run_replications();
}

double expected_stop_estimate(const BernoulliHypothesisPair& pair, OddsRatio prior,
                              double lower_threshold) {
  if (!(lower_threshold > 0.0)) {
    throw InvalidArgument("lower threshold must be positive, got " + std::to_string(lower_threshold));
  }
  const double kl = kl_per_trial(pair);
  if (kl == 0.0) {
    throw IndistinguishableHypotheses("q == r: the odds never drift toward a decision");
  }
  if (prior.ratio() <= lower_threshold) return 0.0;
  return std::log(prior.ratio() / lower_threshold) / kl;
}

}  // namespace bellbayes
