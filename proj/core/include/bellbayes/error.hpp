#pragma once

#include <stdexcept>
#include <string>

namespace bellbayes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument is outside its documented domain
/// (probability outside [0,1], k < 2, target D <= 1, m > n, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Both hypotheses assign zero probability to the observed data.
class IndeterminateEvidence : public Error {
 public:
  using Error::Error;
};

/// The LR hypothesis rules out an outcome that QM allows, so the expected
/// per-trial information is unbounded.
class InfiniteInformation : public Error {
 public:
  using Error::Error;
};

/// q == r: no number of trials separates the hypotheses.
class IndistinguishableHypotheses : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// A grid search would exceed its configured evaluation budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace bellbayes
