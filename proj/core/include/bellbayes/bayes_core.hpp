#pragma once

// Log-domain Bayesian comparison of two Bernoulli hypotheses: QM predicts a
// per-trial "yes" probability q, a local-realist (LR) theory predicts r.
//
// Evidence is carried as ln D where D = E_q / E_r is the likelihood ratio of
// the observed tally. D > 1 favours QM and divides the LR:QM odds. Zero
// probabilities follow the limit conventions 0*ln(0) = 0 and 0^0 = 1, and an
// outcome one hypothesis forbids drives ln D to +/-infinity.

#include <cstdint>

namespace bellbayes {

/// Per-trial "yes" probabilities under QM (q) and under LR (r).
class BernoulliHypothesisPair {
 public:
  /// Throws InvalidArgument unless both values lie in [0, 1].
  BernoulliHypothesisPair(double q, double r);

  double q() const noexcept { return q_; }
  double r() const noexcept { return r_; }

  friend bool operator==(const BernoulliHypothesisPair&,
                         const BernoulliHypothesisPair&) = default;

 private:
  double q_;
  double r_;
};

/// n trials of which m came out "yes".
class TrialTally {
 public:
  /// Throws InvalidArgument when m > n.
  TrialTally(std::uint64_t n, std::uint64_t m);

  std::uint64_t trials() const noexcept { return n_; }
  std::uint64_t yes() const noexcept { return m_; }
  std::uint64_t no() const noexcept { return n_ - m_; }

  friend TrialTally operator+(TrialTally a, TrialTally b) {
    return {a.n_ + b.n_, a.m_ + b.m_};
  }
  friend bool operator==(const TrialTally&, const TrialTally&) = default;

 private:
  std::uint64_t n_;
  std::uint64_t m_;
};

/// ln D, the natural log of the confidence depressing factor E_q / E_r.
/// +infinity means the data falsified LR, -infinity that it falsified QM.
struct LogBayesFactor {
  double value = 0.0;

  bool lr_falsified() const noexcept;
  bool qm_falsified() const noexcept;
  /// exp(value); only meant for display.
  double depressing_factor() const noexcept;

  /// Evidence from independent blocks adds. Throws IndeterminateEvidence
  /// when one block falsified LR and the other falsified QM.
  friend LogBayesFactor operator+(LogBayesFactor a, LogBayesFactor b);
  LogBayesFactor& operator+=(LogBayesFactor other) { return *this = *this + other; }
};

/// LR odds over QM odds, p_r / p_q. 0 and +infinity encode a falsified
/// LR or QM respectively.
class OddsRatio {
 public:
  /// Throws InvalidArgument for negative or NaN ratios.
  explicit OddsRatio(double ratio);

  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

/// ln[C(n,m) p^m (1-p)^(n-m)], with the binomial coefficient taken through
/// log-gamma. Returns -infinity for tallies impossible under p.
double binomial_log_likelihood(double p, TrialTally tally);

/// m ln(q/r) + (n-m) ln((1-q)/(1-r)). Throws IndeterminateEvidence when
/// both hypotheses forbid the tally.
LogBayesFactor log_depressing_factor(const BernoulliHypothesisPair& pair, TrialTally tally);

/// Bayes' rule: posterior = prior * E_r / E_q = prior * exp(-d).
OddsRatio update_odds(OddsRatio prior, LogBayesFactor d);

/// Expected ln D per trial when QM is true, i.e. KL(Bern(q) || Bern(r)).
/// Throws InfiniteInformation when r forbids an outcome that q allows.
double kl_per_trial(const BernoulliHypothesisPair& pair);

/// ln(target_d) / kl_per_trial(pair), unrounded. Throws InvalidArgument for
/// target_d <= 1 and IndistinguishableHypotheses when q == r.
double required_trials(const BernoulliHypothesisPair& pair, double target_d);

/// ceil(required_trials(pair, target_d)).
std::uint64_t required_trials_ceil(const BernoulliHypothesisPair& pair, double target_d);

}  // namespace bellbayes
