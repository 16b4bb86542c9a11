#pragma once

// The Bell scenarios as (q, r) hypothesis pairs: the quantum prediction for
// the "yes" result of one test and the local-realist prediction that comes
// closest to it while still obeying the relevant inequality.

#include <array>
#include <optional>
#include <string>

#include "bellbayes/bayes_core.hpp"

namespace bellbayes {

enum class ScenarioKind { GhzMermin, ChainedBell, HardyPaperMode, HardyLiteralMode, HardyNaive };

/// How the three zero-q Hardy setups (C2, C3, C4) are scored once LR spreads
/// r1 over them as r1/3 each.
///  - Paper:   per-trial depression -ln(1 - r1); reproduces r = 0.03358, n ~ 270.
///  - Literal: per-trial depression -ln(1 - r1/3), the direct substitution.
enum class HardyMode { Paper, Literal };

const char* to_string(HardyMode mode) noexcept;

class ScenarioSpec {
 public:
  static ScenarioSpec ghz() { return ScenarioSpec(ScenarioKind::GhzMermin, 0); }
  /// Throws InvalidArgument for k < 2.
  static ScenarioSpec chained(int k);
  static ScenarioSpec hardy(HardyMode mode);
  static ScenarioSpec hardy_naive() { return ScenarioSpec(ScenarioKind::HardyNaive, 0); }

  ScenarioKind kind() const noexcept { return kind_; }
  /// Number of measurement directions per observer; 0 unless chained.
  int k() const noexcept { return k_; }
  std::optional<HardyMode> hardy_mode() const noexcept;

  /// Stable short name: "ghz", "chained-k4", "hardy-paper", "hardy-literal", "hardy-naive".
  std::string tag() const;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;

 private:
  ScenarioSpec(ScenarioKind kind, int k) : kind_(kind), k_(k) {}

  ScenarioKind kind_;
  int k_;
};

/// k measurement directions per observer, theta = pi / (2k) between neighbours.
struct ChainedGeometry {
  int k;
  double theta;

  /// Throws InvalidArgument for k < 2.
  static ChainedGeometry for_k(int k);
};

struct HardySolution {
  HardyMode mode;
  double r_opt;  ///< optimized r1; setups 2-4 get r1/3 each.
  /// (q_j, r_j) for the coincidences C1..C4.
  std::array<BernoulliHypothesisPair, 4> setups;
  double kl_nats;  ///< per-trial depression at the optimum (both families equal).
  double n_real;
  int iterations;
};

/// q = 1, r = 3/4: Mermin's bound saturated by <product> = 1/2 for all four terms.
BernoulliHypothesisPair ghz_pair();

/// q = (1 - cos(pi/2k)) / 2, r = 1/(2k).
BernoulliHypothesisPair chained_pair(int k);

/// ((sqrt(5) - 1) / 2)^5 ~ 0.0901699.
double hardy_q() noexcept;

/// g(r) = kl_per_trial(hardy_q(), r) + ln(1 - s r) with s = 1 (Paper) or 1/3
/// (Literal). Positive near 0, negative at q, strictly decreasing between.
double hardy_objective(HardyMode mode, double r);

/// Root of hardy_objective on (0, q) by bisection; throws InvalidArgument for
/// target_d <= 1 and NonConvergence if the bracket is lost.
HardySolution hardy_optimize_r(HardyMode mode, double target_d);

/// Smallest n with (1 - hardy_q())^n < survival_threshold: the number of
/// setup-1 trials after which an all-zero LR theory has less than that
/// chance of surviving. Requires 0 < survival_threshold < 1.
int hardy_naive_trials(double survival_threshold);

struct ScenarioResolution {
  ScenarioSpec spec;
  BernoulliHypothesisPair pair;
  std::optional<ChainedGeometry> geometry;
  std::optional<HardySolution> hardy;
};

ScenarioResolution scenario_pair(const ScenarioSpec& spec, double target_d = 1e4);

struct OptimalK {
  int k;
  double n_real;
};

/// k in [k_min, k_max] minimizing required_trials(chained_pair(k), target_d);
/// ties go to the smaller k.
OptimalK find_optimal_k(double target_d, int k_min, int k_max);

}  // namespace bellbayes
