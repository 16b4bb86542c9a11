#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "bellbayes/bayes_core.hpp"
#include "bellbayes/error.hpp"
#include "doctest.h"

using namespace bellbayes;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Probability of exactly m yes results in n trials, by enumerating all 2^n
// outcome sequences.
double enumerated_probability(double p, int n, int m) {
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != m) continue;
    double prob = 1.0;
    for (int i = 0; i < n; ++i) prob *= (mask >> i) & 1u ? p : 1.0 - p;
    total += prob;
  }
  return total;
}

// C(n, m) by the multiplicative formula; exact in double for n <= 50.
double choose(int n, int m) {
  double c = 1.0;
  for (int i = 1; i <= m; ++i) c = c * (n - m + i) / i;
  return c;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_SUITE("domain types") {
  TEST_CASE("pair rejects probabilities outside [0, 1]") {
    CHECK_NOTHROW(BernoulliHypothesisPair(0.0, 1.0));
    CHECK_THROWS_AS(BernoulliHypothesisPair(-0.1, 0.5), InvalidArgument);
    CHECK_THROWS_AS(BernoulliHypothesisPair(0.5, 1.5), InvalidArgument);
    CHECK_THROWS_AS(BernoulliHypothesisPair(std::nan(""), 0.5), InvalidArgument);
  }

  TEST_CASE("tally requires m <= n") {
    CHECK_NOTHROW(TrialTally(3, 3));
    CHECK_THROWS_AS(TrialTally(3, 4), InvalidArgument);
    const TrialTally sum = TrialTally(3, 1) + TrialTally(5, 2);
    CHECK(sum.trials() == 8);
    CHECK(sum.yes() == 3);
    CHECK(sum.no() == 5);
  }

  TEST_CASE("odds ratio accepts 0 and infinity but not negatives") {
    CHECK_NOTHROW(OddsRatio(0.0));
    CHECK_NOTHROW(OddsRatio{kInf});
    CHECK_THROWS_AS(OddsRatio(-1.0), InvalidArgument);
    CHECK_THROWS_AS(OddsRatio(std::nan("")), InvalidArgument);
  }

  TEST_CASE("log factor addition refuses contradictory falsifications") {
    CHECK((LogBayesFactor{1.0} + LogBayesFactor{2.0}).value == 3.0);
    CHECK((LogBayesFactor{kInf} + LogBayesFactor{-5.0}).lr_falsified());
    CHECK_THROWS_AS(LogBayesFactor{kInf} + LogBayesFactor{-kInf}, IndeterminateEvidence);
  }
}

TEST_SUITE("binomial_log_likelihood") {
  TEST_CASE("fair coin, one yes in two trials") {
    const double oracle = std::log(enumerated_probability(0.5, 2, 1));
    CHECK(oracle == doctest::Approx(-0.693147180559945).epsilon(1e-14));
    CHECK(binomial_log_likelihood(0.5, {2, 1}) == doctest::Approx(oracle).epsilon(1e-13));
  }

  TEST_CASE("certain and impossible events") {
    CHECK(binomial_log_likelihood(1.0, {10, 10}) == doctest::Approx(0.0));
    CHECK(binomial_log_likelihood(0.0, {3, 1}) == -kInf);
    CHECK(binomial_log_likelihood(1.0, {3, 2}) == -kInf);
    CHECK(binomial_log_likelihood(0.0, {4, 0}) == doctest::Approx(0.0));
  }

  TEST_CASE("matches sequence enumeration for small n") {
    for (double p : {0.1, 0.37, 0.5, 0.9}) {
      for (int n = 0; n <= 12; ++n) {
        for (int m = 0; m <= n; ++m) {
          const double oracle = std::log(enumerated_probability(p, n, m));
          CHECK(rel_close(binomial_log_likelihood(p, TrialTally(n, m)), oracle, 1e-12));
        }
      }
    }
  }

  TEST_CASE("large n stays finite through log-gamma") {
    const double ll = binomial_log_likelihood(0.3, {1'000'000, 300'000});
    CHECK(std::isfinite(ll));
    // Near the mode the log pmf is about -0.5 ln(2 pi n p (1-p)).
    CHECK(ll == doctest::Approx(-0.5 * std::log(2 * M_PI * 1e6 * 0.21)).epsilon(1e-4));
  }
}

TEST_SUITE("log_depressing_factor") {
  TEST_CASE("GHZ 32 trials") {
    const LogBayesFactor d = log_depressing_factor({1.0, 0.75}, {32, 32});
    CHECK(d.value == doctest::Approx(32 * std::log(4.0 / 3.0)).epsilon(1e-14));
    CHECK(d.value == doctest::Approx(9.2058).epsilon(1e-4));
    CHECK(d.depressing_factor() == doctest::Approx(9954.96119507442).epsilon(1e-12));
  }

  TEST_CASE("identical hypotheses give D = 1") {
    for (double p : {0.0, 0.2, 0.5, 1.0}) {
      const std::uint64_t m = p == 0.0 ? 0 : (p == 1.0 ? 7 : 3);
      CHECK(log_depressing_factor({p, p}, {7, m}).value == 0.0);
    }
  }

  TEST_CASE("two trials, q = 0.5 vs r = 0.25") {
    const double oracle = binomial_log_likelihood(0.5, {2, 1}) - binomial_log_likelihood(0.25, {2, 1});
    CHECK(oracle == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
    CHECK(log_depressing_factor({0.5, 0.25}, {2, 1}).value == doctest::Approx(oracle).epsilon(1e-12));
  }

  TEST_CASE("falsification conventions") {
    // LR forbids "yes" outright.
    CHECK(log_depressing_factor({0.09, 0.0}, {10, 1}).lr_falsified());
    // QM is certain of "yes" and a "no" shows up.
    CHECK(log_depressing_factor({1.0, 0.75}, {10, 9}).qm_falsified());
    // A zero coefficient contributes nothing even where the probability is 0.
    CHECK(log_depressing_factor({0.0, 0.3}, {5, 0}).value == doctest::Approx(5 * std::log(1 / 0.7)));
    CHECK_THROWS_AS(log_depressing_factor({1.0, 1.0}, {3, 2}), IndeterminateEvidence);
    CHECK_THROWS_AS(log_depressing_factor({1.0, 0.0}, {3, 2}), IndeterminateEvidence);
  }
}

TEST_SUITE("update_odds") {
  TEST_CASE("100:1 prior, D = 10^4") {
    CHECK(update_odds(OddsRatio{100.0}, LogBayesFactor{std::log(1e4)}).ratio() ==
          doctest::Approx(0.01).epsilon(1e-12));
  }

  TEST_CASE("no evidence leaves odds unchanged; factor 2 halves them") {
    CHECK(update_odds(OddsRatio{3.7}, LogBayesFactor{0.0}).ratio() == 3.7);
    CHECK(update_odds(OddsRatio{1.0}, LogBayesFactor{std::log(2.0)}).ratio() == doctest::Approx(0.5));
  }

  TEST_CASE("falsified hypotheses map to 0 and infinity") {
    CHECK(update_odds(OddsRatio{100.0}, LogBayesFactor{kInf}).ratio() == 0.0);
    CHECK(update_odds(OddsRatio{100.0}, LogBayesFactor{-kInf}).ratio() == kInf);
  }

  TEST_CASE("sequential updates compose") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> d(-20.0, 20.0);
    std::uniform_real_distribution<double> prior(1e-3, 1e3);
    for (int i = 0; i < 1000; ++i) {
      const OddsRatio p{prior(gen)};
      const LogBayesFactor d1{d(gen)};
      const LogBayesFactor d2{d(gen)};
      const double two_step = update_odds(update_odds(p, d1), d2).ratio();
      const double one_step = update_odds(p, d1 + d2).ratio();
      CHECK(rel_close(two_step, one_step, 1e-12));
    }
  }
}

TEST_SUITE("kl_per_trial") {
  TEST_CASE("worked values") {
    CHECK(kl_per_trial({1.0, 0.75}) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
    CHECK(kl_per_trial({1.0, 0.75}) == doctest::Approx(0.287682).epsilon(1e-6));
    CHECK(kl_per_trial({0.3, 0.3}) == 0.0);
    CHECK(kl_per_trial({0.146447, 0.25}) == doctest::Approx(0.032080).epsilon(1e-4));
  }

  TEST_CASE("infinite information when LR forbids a QM-allowed outcome") {
    CHECK_THROWS_AS(kl_per_trial({0.09, 0.0}), InfiniteInformation);
    CHECK_THROWS_AS(kl_per_trial({0.5, 1.0}), InfiniteInformation);
    CHECK_THROWS_AS(kl_per_trial({1.0, 0.0}), InfiniteInformation);
    CHECK_NOTHROW(kl_per_trial({0.0, 0.4}));
    CHECK(kl_per_trial({0.0, 0.4}) == doctest::Approx(-std::log(0.6)));
  }

  TEST_CASE("complement symmetry") {
    for (double q : {0.05, 0.3, 0.8}) {
      for (double r : {0.1, 0.5, 0.95}) {
        CHECK(kl_per_trial({1 - q, 1 - r}) == doctest::Approx(kl_per_trial({q, r})).epsilon(1e-12));
      }
    }
  }
}

TEST_SUITE("required_trials") {
  TEST_CASE("GHZ and CHSH headline counts") {
    CHECK(required_trials({1.0, 0.75}, 1e4) == doctest::Approx(32.0156911186044).epsilon(1e-12));
    CHECK(required_trials_ceil({1.0, 0.75}, 1e4) == 33);
    CHECK(required_trials({0.146447, 0.25}, 1e4) == doctest::Approx(287.1).epsilon(1e-3));
  }

  TEST_CASE("target just above 1 needs almost no trials") {
    CHECK(required_trials({1.0, 0.75}, 1.0 + 1e-12) < 1e-10);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(required_trials({0.3, 0.3}, 1e4), IndistinguishableHypotheses);
    CHECK_THROWS_AS(required_trials({1.0, 0.75}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(required_trials({1.0, 0.75}, 0.5), InvalidArgument);
  }
}

TEST_SUITE("properties") {
  TEST_CASE("multiplicativity over concatenated blocks") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> prob(0.01, 0.99);
    std::uniform_int_distribution<std::uint64_t> count(0, 5000);
    for (int i = 0; i < 2000; ++i) {
      const BernoulliHypothesisPair pair{prob(gen), prob(gen)};
      const std::uint64_t n1 = count(gen), n2 = count(gen);
      const TrialTally a{n1, std::uniform_int_distribution<std::uint64_t>(0, n1)(gen)};
      const TrialTally b{n2, std::uniform_int_distribution<std::uint64_t>(0, n2)(gen)};
      const double joint = log_depressing_factor(pair, a + b).value;
      const double split = log_depressing_factor(pair, a).value + log_depressing_factor(pair, b).value;
      CHECK(rel_close(joint, split, 1e-12));
    }
  }

  TEST_CASE("depressing factor equals the likelihood ratio") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> prob(0.001, 0.999);
    std::uniform_int_distribution<std::uint64_t> count(0, 2000);
    for (int i = 0; i < 2000; ++i) {
      const BernoulliHypothesisPair pair{prob(gen), prob(gen)};
      const std::uint64_t n = count(gen);
      const TrialTally t{n, std::uniform_int_distribution<std::uint64_t>(0, n)(gen)};
      const double ratio = binomial_log_likelihood(pair.q(), t) - binomial_log_likelihood(pair.r(), t);
      // The log-gamma terms cancel only up to their own rounding; scale by
      // the size of the individual log likelihoods.
      const double scale = std::max({1.0, std::abs(binomial_log_likelihood(pair.q(), t)),
                                     std::abs(binomial_log_likelihood(pair.r(), t))});
      CHECK(std::abs(log_depressing_factor(pair, t).value - ratio) <= 1e-12 * scale);
    }
  }

  TEST_CASE("Gibbs inequality on the 0.01 grid") {
    for (int i = 1; i <= 99; ++i) {
      for (int j = 1; j <= 99; ++j) {
        const double kl = kl_per_trial({i / 100.0, j / 100.0});
        if (i == j) {
          CHECK(kl == 0.0);
        } else {
          CHECK(kl > 0.0);
        }
      }
    }
  }

  TEST_CASE("E[ln D] = n KL by exact summation") {
    for (double q : {0.05, 0.146447, 0.5, 0.91}) {
      for (double r : {0.02, 0.25, 0.6}) {
        const BernoulliHypothesisPair pair{q, r};
        for (int n = 1; n <= 20; ++n) {
          double expectation = 0.0;
          for (int m = 0; m <= n; ++m) {
            const double pmf = choose(n, m) * std::pow(q, m) * std::pow(1 - q, n - m);
            expectation += pmf * log_depressing_factor(pair, TrialTally(n, m)).value;
          }
          CHECK(expectation == doctest::Approx(n * kl_per_trial(pair)).epsilon(1e-10));
        }
      }
    }
  }
}
