#pragma once

// Brute-force minimax over local-realist strategies. The LR theorist picks a
// probability assignment obeying the relevant Bell inequality; the
// experimenter then runs whichever setup gives the largest per-trial
// depression (KL divergence). Grid search confirms that the symmetric,
// inequality-saturating assignments are the LR theorist's best replies.
//
// Grids are enumerated in lexicographic index order and only a strictly
// better value replaces the incumbent, so ties go to the lexicographically
// smallest assignment and results never depend on evaluation order.

#include <array>
#include <cstdint>
#include <vector>

#include "bellbayes/scenarios.hpp"

namespace bellbayes {

/// Feasibility checks accept rounding slop of this size on the linear constraint.
inline constexpr double kConstraintSlack = 1e-12;

/// LR averages of a'bc, ab'c, abc' and -a'b'c', each in [-1, 1].
struct GhzAssignment {
  std::array<double, 4> e;

  /// |e1 + e2 + e3 + e4| <= 2 and every e_j in [-1, 1].
  bool feasible() const noexcept;
};

/// LR probabilities for the 2k chained setups: the first 2k-1 are the
/// left-hand terms, the last is p(A1 B2k).
struct ChainAssignment {
  std::vector<double> probs;

  /// Sum of the first 2k-1 terms >= the last, all terms in [0, 1].
  bool feasible() const noexcept;
};

/// LR probabilities r1..r4 of the Hardy coincidences C1..C4.
struct HardyAssignment {
  std::array<double, 4> r;

  /// Clauser-Horne: r1 <= r2 + r3 + r4, all terms in [0, 1].
  bool feasible() const noexcept;
};

struct GhzMinimax {
  GhzAssignment assignment;
  double value;      ///< experimenter's best per-trial depression, nats
  double cell;       ///< grid spacing on each e_j
};

struct ChainMinimax {
  ChainAssignment assignment;
  double value;
  double cell;
};

struct HardyMinimax {
  HardyAssignment assignment;
  double value;
  double n_real;     ///< ln(target_d) / value
  double cell;       ///< spacing on the r1 axis; r2..r4 use a third of it
};

/// max_j kl(q = 1, r_j = (1 + e_j)/2). Infinite when some r_j is 0.
double ghz_experimenter_value(const GhzAssignment& assignment);

/// max_j kl(q_j, r_j) with q_j = q for the left-hand setups and 1 - q for the last.
double chained_experimenter_value(int k, const ChainAssignment& assignment);

/// max(kl(hardy_q(), r1), depression of setups 2..4). Each zero-q setup j
/// costs LR -ln(1 - r_j) in Literal mode and -ln(1 - 3 r_j) in Paper mode, so
/// the symmetric split r_j = r1/3 reproduces the two Hardy scoring rules.
double hardy_experimenter_value(HardyMode mode, const HardyAssignment& assignment);

/// e_j = -1 + 2 i_j / grid_steps. Requires grid_steps >= 10.
GhzMinimax minimax_lr_ghz(int grid_steps = 200);

/// r_j = i_j / grid_steps over all 2k setups. Throws BudgetExceeded when
/// (grid_steps + 1)^(2k) exceeds max_grid_points.
ChainMinimax minimax_lr_chained(int k, int grid_steps = 100,
                                std::uint64_t max_grid_points = 200'000'000);

/// r1 = i / grid_steps on [0, 1]; r2..r4 on a grid three times finer so that
/// r1/3 is representable. Requires grid_steps >= 50.
HardyMinimax minimax_lr_hardy(HardyMode mode, int grid_steps = 1000, double target_d = 1e4);

}  // namespace bellbayes
