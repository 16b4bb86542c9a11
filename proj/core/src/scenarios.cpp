#include "bellbayes/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bellbayes/error.hpp"

namespace bellbayes {
namespace {

constexpr double kBracketMargin = 1e-12;
constexpr double kBisectionTolerance = 1e-12;
constexpr int kBisectionCap = 200;

double zero_setup_scale(HardyMode mode) { return mode == HardyMode::Paper ? 1.0 : 1.0 / 3.0; }

void require_target(double target_d) {
  if (!(target_d > 1.0) || !std::isfinite(target_d)) {
    throw InvalidArgument("target depressing factor must be finite and exceed 1, got " + std::to_string(target_d));
  }
}

}  // namespace

const char* to_string(HardyMode mode) noexcept {
  return mode == HardyMode::Paper ? "paper" : "literal";
}

ScenarioSpec ScenarioSpec::chained(int k) {
  if (k < 2) throw InvalidArgument("chained Bell scenario needs k >= 2, got " + std::to_string(k));
  return ScenarioSpec(ScenarioKind::ChainedBell, k);
}

ScenarioSpec ScenarioSpec::hardy(HardyMode mode) {
  return ScenarioSpec(mode == HardyMode::Paper ? ScenarioKind::HardyPaperMode
                                               : ScenarioKind::HardyLiteralMode,
                      0);
}

std::optional<HardyMode> ScenarioSpec::hardy_mode() const noexcept {
  switch (kind_) {
    case ScenarioKind::HardyPaperMode: return HardyMode::Paper;
    case ScenarioKind::HardyLiteralMode: return HardyMode::Literal;
    default: return std::nullopt;
  }
}

std::string ScenarioSpec::tag() const {
  switch (kind_) {
    case ScenarioKind::GhzMermin: return "ghz";
    case ScenarioKind::ChainedBell: return "chained-k" + std::to_string(k_);
    case ScenarioKind::HardyPaperMode: return "hardy-paper";
    case ScenarioKind::HardyLiteralMode: return "hardy-literal";
    case ScenarioKind::HardyNaive: return "hardy-naive";
  }
  return "unknown";
}

ChainedGeometry ChainedGeometry::for_k(int k) {
  if (k < 2) throw InvalidArgument("chained Bell scenario needs k >= 2, got " + std::to_string(k));
  return {k, std::numbers::pi / (2.0 * k)};
}

BernoulliHypothesisPair ghz_pair() {
  // LR average 1/2 for each product; "yes" (+1) then occurs with (1 + 1/2) / 2.
  constexpr double lr_expectation = 0.5;
  return {1.0, (1.0 + lr_expectation) / 2.0};
}

BernoulliHypothesisPair chained_pair(int k) {
  const ChainedGeometry geometry = ChainedGeometry::for_k(k);
  return {(1.0 - std::cos(geometry.theta)) / 2.0, 1.0 / (2.0 * k)};
}

double hardy_q() noexcept {
  // Golden-ratio conjugate to the fifth power.
  const double phi_conj = (std::sqrt(5.0) - 1.0) / 2.0;
  return std::pow(phi_conj, 5);
}

double hardy_objective(HardyMode mode, double r) {
  return kl_per_trial({hardy_q(), r}) + std::log1p(-r * zero_setup_scale(mode));
}

HardySolution hardy_optimize_r(HardyMode mode, double target_d) {
  require_target(target_d);
  const double q = hardy_q();
  double lo = kBracketMargin;
  double hi = q - kBracketMargin;
  if (!(hardy_objective(mode, lo) > 0.0) || !(hardy_objective(mode, hi) < 0.0)) {
    throw NonConvergence("Hardy objective does not change sign on (0, q)");
  }

  int iterations = 0;
  while (hi - lo > kBisectionTolerance) {
    if (++iterations > kBisectionCap) {
      throw NonConvergence("Hardy bisection exceeded " + std::to_string(kBisectionCap) + " iterations");
    }
    const double mid = lo + (hi - lo) / 2.0;
    const double g = hardy_objective(mode, mid);
    if (g == 0.0) {
      lo = hi = mid;
      break;
    }
    (g > 0.0 ? lo : hi) = mid;
  }

  const double r = lo + (hi - lo) / 2.0;
  const BernoulliHypothesisPair setup1{q, r};
  const BernoulliHypothesisPair zero_setup{0.0, r / 3.0};
  const double kl = kl_per_trial(setup1);
  return HardySolution{
      .mode = mode,
      .r_opt = r,
      .setups = {setup1, zero_setup, zero_setup, zero_setup},
      .kl_nats = kl,
      .n_real = std::log(target_d) / kl,
      .iterations = iterations,
  };
}

int hardy_naive_trials(double survival_threshold) {
  if (!(survival_threshold > 0.0 && survival_threshold < 1.0)) {
    throw InvalidArgument("survival threshold must lie in (0, 1), got " +
                          std::to_string(survival_threshold));
  }
  const double miss = 1.0 - hardy_q();
  int n = 1;
  for (double survival = miss; survival >= survival_threshold; survival *= miss) ++n;
  return n;
}

ScenarioResolution scenario_pair(const ScenarioSpec& spec, double target_d) {
  switch (spec.kind()) {
    case ScenarioKind::GhzMermin:
      return {spec, ghz_pair(), std::nullopt, std::nullopt};
    case ScenarioKind::ChainedBell:
      return {spec, chained_pair(spec.k()), ChainedGeometry::for_k(spec.k()), std::nullopt};
    case ScenarioKind::HardyPaperMode:
    case ScenarioKind::HardyLiteralMode: {
      HardySolution solution = hardy_optimize_r(*spec.hardy_mode(), target_d);
      const BernoulliHypothesisPair pair = solution.setups[0];
      return {spec, pair, std::nullopt, std::move(solution)};
    }
    case ScenarioKind::HardyNaive:
      return {spec, {hardy_q(), 0.0}, std::nullopt, std::nullopt};
  }
  throw InvalidArgument("unknown scenario kind");
}

OptimalK find_optimal_k(double target_d, int k_min, int k_max) {
  require_target(target_d);
  if (k_min < 2 || k_max < k_min) {
    throw InvalidArgument("k range must satisfy 2 <= k_min <= k_max, got [" +
                          std::to_string(k_min) + ", " + std::to_string(k_max) + "]");
  }
  OptimalK best{k_min, required_trials(chained_pair(k_min), target_d)};
  for (int k = k_min + 1; k <= k_max; ++k) {
    const double n = required_trials(chained_pair(k), target_d);
    if (n < best.n_real) best = {k, n};
  }
  return best;
}

}  // namespace bellbayes
