#include "bellbayes/lr_adversary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "bellbayes/error.hpp"

namespace bellbayes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

// kl_per_trial, but +inf instead of an exception when r forbids a q-allowed outcome.
double kl_or_inf(double q, double r) {
  if ((q > 0.0 && r == 0.0) || (q < 1.0 && r == 1.0)) return kInf;
  return kl_per_trial({q, r});
}

// -ln(1 - x) for the zero-q setups, +inf once x reaches 1.
double zero_setup_depression(double x) { return x >= 1.0 ? kInf : -std::log1p(-x); }

double hardy_zero_setup(HardyMode mode, double r_j) {
  return zero_setup_depression(mode == HardyMode::Paper ? 3.0 * r_j : r_j);
}

// Lexicographic branch-and-bound over a product grid. Every coordinate's cost
// is looked up in a per-dimension table; `feasible` is checked on complete
// index vectors. Prefixes whose partial max already reaches the incumbent are
// skipped, which cannot drop a strictly better, lexicographically later point.
class GridSearch {
 public:
  GridSearch(std::vector<const std::vector<double>*> tables,
             std::function<bool(const std::vector<int>&)> feasible)
      : tables_(std::move(tables)), feasible_(std::move(feasible)), index_(tables_.size()) {}

  void run() { descend(0, 0.0); }

  bool found() const noexcept { return found_; }
  double best_value() const noexcept { return best_value_; }
  const std::vector<int>& best_index() const noexcept { return best_index_; }

 private:
  void descend(std::size_t dim, double partial) {
    if (dim == tables_.size()) {
      if (partial < best_value_ && feasible_(index_)) {
        best_value_ = partial;
        best_index_ = index_;
        found_ = true;
      }
      return;
    }
    const std::vector<double>& table = *tables_[dim];
    for (std::size_t i = 0; i < table.size(); ++i) {
      const double value = std::max(partial, table[i]);
      if (value >= best_value_) continue;
      index_[dim] = static_cast<int>(i);
      descend(dim + 1, value);
    }
  }

  std::vector<const std::vector<double>*> tables_;
  std::function<bool(const std::vector<int>&)> feasible_;
  std::vector<int> index_;
  std::vector<int> best_index_;
  double best_value_ = kInf;
  bool found_ = false;
};

}  // namespace

bool GhzAssignment::feasible() const noexcept {
  if (!std::all_of(e.begin(), e.end(), [](double x) { return x >= -1.0 && x <= 1.0; })) return false;
  const double sum = std::accumulate(e.begin(), e.end(), 0.0);
  return sum <= 2.0 + kConstraintSlack && sum >= -2.0 - kConstraintSlack;
}

bool ChainAssignment::feasible() const noexcept {
  if (probs.size() < 4 || probs.size() % 2 != 0) return false;
  if (!std::all_of(probs.begin(), probs.end(), in_unit)) return false;
  const double lhs = std::accumulate(probs.begin(), probs.end() - 1, 0.0);
  return lhs + kConstraintSlack >= probs.back();
}

bool HardyAssignment::feasible() const noexcept {
  if (!std::all_of(r.begin(), r.end(), in_unit)) return false;
  return r[0] <= r[1] + r[2] + r[3] + kConstraintSlack;
}

double ghz_experimenter_value(const GhzAssignment& assignment) {
  double worst = 0.0;
  for (double e : assignment.e) worst = std::max(worst, kl_or_inf(1.0, (1.0 + e) / 2.0));
  return worst;
}

double chained_experimenter_value(int k, const ChainAssignment& assignment) {
  if (assignment.probs.size() != static_cast<std::size_t>(2 * k)) {
    throw InvalidArgument("chained assignment needs 2k = " + std::to_string(2 * k) + " probabilities");
  }
  const double q = chained_pair(k).q();
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < assignment.probs.size(); ++j) {
    worst = std::max(worst, kl_or_inf(q, assignment.probs[j]));
  }
  return std::max(worst, kl_or_inf(1.0 - q, assignment.probs.back()));
}

double hardy_experimenter_value(HardyMode mode, const HardyAssignment& assignment) {
  double worst = kl_or_inf(hardy_q(), assignment.r[0]);
  for (std::size_t j = 1; j < 4; ++j) worst = std::max(worst, hardy_zero_setup(mode, assignment.r[j]));
  return worst;
}

GhzMinimax minimax_lr_ghz(int grid_steps) {
  if (grid_steps < 10) throw InvalidArgument("GHZ grid needs at least 10 steps");
  const int n = grid_steps;
  // r_j = (1 + e_j) / 2 = i / n.
  std::vector<double> cost(n + 1);
  for (int i = 0; i <= n; ++i) cost[i] = kl_or_inf(1.0, static_cast<double>(i) / n);

  // -2 <= sum e_j <= 2  <=>  n <= sum i_j <= 3n.
  GridSearch search({&cost, &cost, &cost, &cost}, [n](const std::vector<int>& idx) {
    const int sum = std::accumulate(idx.begin(), idx.end(), 0);
    return sum >= n && sum <= 3 * n;
  });
  search.run();

  GhzAssignment best{};
  for (std::size_t j = 0; j < 4; ++j) best.e[j] = -1.0 + 2.0 * search.best_index()[j] / n;
  return {best, search.best_value(), 2.0 / n};
}

ChainMinimax minimax_lr_chained(int k, int grid_steps, std::uint64_t max_grid_points) {
  if (k < 2) throw InvalidArgument("chained Bell scenario needs k >= 2, got " + std::to_string(k));
  if (grid_steps < 2) throw InvalidArgument("chained grid needs at least 2 steps");
  const int n = grid_steps;
  const int dims = 2 * k;
  const double points = std::pow(static_cast<double>(n + 1), dims);
  if (points > static_cast<double>(max_grid_points)) {
    throw BudgetExceeded("chained minimax grid for k=" + std::to_string(k) + " has " +
                         std::to_string(points) + " points, budget is " +
                         std::to_string(max_grid_points));
  }

  const double q = chained_pair(k).q();
  std::vector<double> left(n + 1);
  std::vector<double> last(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double r = static_cast<double>(i) / n;
    left[i] = kl_or_inf(q, r);
    last[i] = kl_or_inf(1.0 - q, r);
  }

  std::vector<const std::vector<double>*> tables(dims - 1, &left);
  tables.push_back(&last);
  GridSearch search(std::move(tables), [](const std::vector<int>& idx) {
    return std::accumulate(idx.begin(), idx.end() - 1, 0) >= idx.back();
  });
  search.run();

  ChainAssignment best;
  for (int i : search.best_index()) best.probs.push_back(static_cast<double>(i) / n);
  return {std::move(best), search.best_value(), 1.0 / n};
}

HardyMinimax minimax_lr_hardy(HardyMode mode, int grid_steps, double target_d) {
  if (grid_steps < 50) throw InvalidArgument("Hardy grid needs at least 50 steps");
  if (!(target_d > 1.0)) {
    throw InvalidArgument("target depressing factor must exceed 1, got " + std::to_string(target_d));
  }
  const int n = grid_steps;
  const int fine = 3 * n;
  const double q = hardy_q();

  std::vector<double> setup1(n + 1);
  for (int i = 0; i <= n; ++i) setup1[i] = kl_or_inf(q, static_cast<double>(i) / n);
  std::vector<double> zero_setup(fine + 1);
  for (int i = 0; i <= fine; ++i) zero_setup[i] = hardy_zero_setup(mode, static_cast<double>(i) / fine);

  // zero_setup is nondecreasing in its index: the r2 and r3 loops stop at the
  // first index that reaches the incumbent, and for r4 the smallest feasible
  // index dominates every larger one.
  double best_value = kInf;
  std::array<int, 4> best_idx{};
  for (int i1 = 0; i1 <= n; ++i1) {
    if (setup1[i1] >= best_value) continue;
    for (int i2 = 0; i2 <= fine; ++i2) {
      const double m2 = std::max(setup1[i1], zero_setup[i2]);
      if (m2 >= best_value) break;
      for (int i3 = 0; i3 <= fine; ++i3) {
        const double m3 = std::max(m2, zero_setup[i3]);
        if (m3 >= best_value) break;
        // Clauser-Horne on the fine grid: 3 i1 <= i2 + i3 + i4.
        const int i4 = std::max(0, 3 * i1 - i2 - i3);
        if (i4 > fine) continue;
        const double value = std::max(m3, zero_setup[i4]);
        if (value < best_value) {
          best_value = value;
          best_idx = {i1, i2, i3, i4};
        }
      }
    }
  }

  HardyAssignment best{{static_cast<double>(best_idx[0]) / n, static_cast<double>(best_idx[1]) / fine,
                        static_cast<double>(best_idx[2]) / fine, static_cast<double>(best_idx[3]) / fine}};
  return {best, best_value, std::log(target_d) / best_value, 1.0 / n};
}

}  // namespace bellbayes
