#include "bellbayes/bayes_core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bellbayes/error.hpp"

namespace bellbayes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

// Contribution of `count` outcomes to ln(P_q / P_r) where the two hypotheses
// give that outcome probabilities pq and pr.
struct OutcomeTerm {
  double value = 0.0;
  bool q_forbids = false;
  bool r_forbids = false;
};

OutcomeTerm outcome_term(std::uint64_t count, double pq, double pr) {
  OutcomeTerm term;
  if (count == 0) return term;
  term.q_forbids = pq == 0.0;
  term.r_forbids = pr == 0.0;
  if (!term.q_forbids && !term.r_forbids && pq != pr) {
    term.value = static_cast<double>(count) * std::log(pq / pr);
  }
  return term;
}

// count * ln(p) under 0 * ln(0) = 0.
double xlogp(std::uint64_t count, double p) {
  if (count == 0) return 0.0;
  if (p == 0.0) return -kInf;
  return static_cast<double>(count) * std::log(p);
}

}  // namespace

BernoulliHypothesisPair::BernoulliHypothesisPair(double q, double r) : q_(q), r_(r) {
  if (!is_probability(q) || !is_probability(r)) {
    throw InvalidArgument("hypothesis probabilities must lie in [0, 1] (q=" +
                          std::to_string(q) + ", r=" + std::to_string(r) + ")");
  }
}

TrialTally::TrialTally(std::uint64_t n, std::uint64_t m) : n_(n), m_(m) {
  if (m > n) {
    throw InvalidArgument("tally has more yes results (" + std::to_string(m) +
                          ") than trials (" + std::to_string(n) + ")");
  }
}

bool LogBayesFactor::lr_falsified() const noexcept { return value == kInf; }
bool LogBayesFactor::qm_falsified() const noexcept { return value == -kInf; }
double LogBayesFactor::depressing_factor() const noexcept { return std::exp(value); }

LogBayesFactor operator+(LogBayesFactor a, LogBayesFactor b) {
  if ((a.lr_falsified() && b.qm_falsified()) || (a.qm_falsified() && b.lr_falsified())) {
    throw IndeterminateEvidence("combined evidence falsifies both hypotheses");
  }
  return LogBayesFactor{a.value + b.value};
}

OddsRatio::OddsRatio(double ratio) : ratio_(ratio) {
  if (!(ratio >= 0.0)) {
    throw InvalidArgument("odds ratio must be nonnegative, got " + std::to_string(ratio));
  }
}

double binomial_log_likelihood(double p, TrialTally tally) {
  if (!is_probability(p)) {
    throw InvalidArgument("probability outside [0, 1]: " + std::to_string(p));
  }
  const double n = static_cast<double>(tally.trials());
  const double m = static_cast<double>(tally.yes());
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
  const double yes = xlogp(tally.yes(), p);
  const double no = tally.no() == 0 ? 0.0 : static_cast<double>(tally.no()) * std::log1p(-p);
  if (yes == -kInf || no == -kInf) return -kInf;
  return log_choose + yes + no;
}

LogBayesFactor log_depressing_factor(const BernoulliHypothesisPair& pair, TrialTally tally) {
  const OutcomeTerm yes = outcome_term(tally.yes(), pair.q(), pair.r());
  const OutcomeTerm no = outcome_term(tally.no(), 1.0 - pair.q(), 1.0 - pair.r());
  const bool q_out = yes.q_forbids || no.q_forbids;
  const bool r_out = yes.r_forbids || no.r_forbids;
  if (q_out && r_out) {
    throw IndeterminateEvidence("observed tally is impossible under both hypotheses");
  }
  if (r_out) return LogBayesFactor{kInf};
  if (q_out) return LogBayesFactor{-kInf};
  return LogBayesFactor{yes.value + no.value};
}

OddsRatio update_odds(OddsRatio prior, LogBayesFactor d) {
  if (d.lr_falsified()) return OddsRatio{0.0};
  if (d.qm_falsified()) return OddsRatio{kInf};
  return OddsRatio{prior.ratio() * std::exp(-d.value)};
}

double kl_per_trial(const BernoulliHypothesisPair& pair) {
  const double q = pair.q();
  const double r = pair.r();
  if ((q > 0.0 && r == 0.0) || (q < 1.0 && r == 1.0)) {
    throw InfiniteInformation("LR assigns probability 0 to an outcome QM allows (q=" +
                              std::to_string(q) + ", r=" + std::to_string(r) + ")");
  }
  double kl = 0.0;
  if (q > 0.0) kl += q * std::log(q / r);
  if (q < 1.0) kl += (1.0 - q) * std::log((1.0 - q) / (1.0 - r));
  // Rounding can leave a tiny negative value when q and r nearly coincide.
  return kl < 0.0 ? 0.0 : kl;
}

double required_trials(const BernoulliHypothesisPair& pair, double target_d) {
  if (!(target_d > 1.0) || !std::isfinite(target_d)) {
    throw InvalidArgument("target depressing factor must be finite and exceed 1, got " + std::to_string(target_d));
  }
  const double kl = kl_per_trial(pair);
  if (kl == 0.0) {
    throw IndistinguishableHypotheses("q == r: no number of trials separates the hypotheses");
  }
  return std::log(target_d) / kl;
}

std::uint64_t required_trials_ceil(const BernoulliHypothesisPair& pair, double target_d) {
  return static_cast<std::uint64_t>(std::ceil(required_trials(pair, target_d)));
}

}  // namespace bellbayes
