#pragma once

#include "segscan/cost.hpp"
#include "segscan/signal.hpp"

#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

namespace segscan {

struct NBkps {
  Index count;
};
struct Penalty {
  double beta;  // pen(T) = beta * K
};
struct Budget {
  double epsilon;  // fewest changes with V <= epsilon
};

/// Exactly one of a known change count, a linear penalty, or a cost budget.
class StoppingRule {
 public:
  using Variant = std::variant<NBkps, Penalty, Budget>;

  /// Throw BadParam for negative or non-finite values.
  static StoppingRule n_bkps(Index count);
  static StoppingRule penalty(double beta);
  static StoppingRule budget(double epsilon);

  const Variant& rule() const noexcept { return rule_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&rule_);
  }

 private:
  explicit StoppingRule(Variant rule) : rule_(rule) {}

  Variant rule_;
};

struct SearchConfig {
  Index min_size = 1;      // raised to the cost's min_seg_len when smaller
  Index jump = 1;          // change points restricted to multiples of jump
  Index window_width = 0;  // window method only; must satisfy 2 * min_size <= w <= T
};

/// Candidate change points shared by every method: multiples of jump within
/// [m, T - m], where m is the effective minimum segment length.
struct AdmissibleGrid {
  Index n_samples = 0;
  Index min_size = 1;
  Index jump = 1;
  std::vector<Index> points;

  /// Largest K for which some admissible segmentation exists; -1 when even
  /// the single segment is too short.
  Index max_changes() const;
};

/// Throws BadParam when min_size or jump is below 1.
AdmissibleGrid admissible_grid(const FittedCost& fitted, const SearchConfig& cfg);

/// Exact minimization of V over segmentations with a fixed number of changes,
/// by the recursion over suffixes
///   D(0, s) = c(s, T),  D(k, s) = min_t c(s, t) + D(k - 1, t).
/// The table is retained between calls: asking again for any K up to the
/// largest already solved performs no cost evaluations. It is keyed by
/// (fitted.id(), m, jump) and rebuilt when the key changes.
class DynpEngine {
 public:
  /// Global minimizer with exactly n_bkps changes; among ties, the
  /// lexicographically smallest ends. Throws Infeasible.
  DetectionResult solve(const FittedCost& fitted, Index n_bkps, const SearchConfig& cfg = {});

  /// Fewest changes K whose optimum V*(K) <= epsilon. Throws BudgetUnreachable.
  DetectionResult solve_budget(const FittedCost& fitted, double epsilon,
                               const SearchConfig& cfg = {});

  /// Largest K currently held in the table (-1 when empty).
  Index retained_changes() const noexcept { return static_cast<Index>(value_.size()) - 1; }

 private:
  void prepare(const FittedCost& fitted, const SearchConfig& cfg);
  void extend(const FittedCost& fitted, Index n_bkps);
  DetectionResult extract(Index n_bkps) const;
  double pair_cost(const FittedCost& fitted, std::size_t from, std::size_t to);

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  std::uint64_t key_id_ = 0;
  Index key_min_size_ = 0;
  Index key_jump_ = 0;

  std::vector<Index> nodes_;  // 0, grid points, T
  Index min_size_ = 1;
  Index max_changes_ = -1;
  std::vector<std::vector<double>> value_;        // value_[k][i] = D(k, nodes_[i])
  std::vector<std::vector<std::size_t>> next_;    // argmin node for k >= 1
  std::vector<std::vector<double>> first_cost_;   // c(nodes_[i], nodes_[next_]) for k >= 1
  std::vector<double> memo_;                      // flattened upper triangle, NaN = unknown
  std::uint64_t fresh_evals_ = 0;
};

DetectionResult dynp(const FittedCost& fitted, Index n_bkps, const SearchConfig& cfg = {});

/// Budget regime on top of dynp.
DetectionResult solve_budget(const FittedCost& fitted, double epsilon,
                             const SearchConfig& cfg = {});

/// Exact minimizer of V + beta * K over all admissible segmentations
/// (optimal partitioning). Candidates are pruned once F(s) + c(s,t) > F(t)
/// when the cost is superadditive; otherwise nothing is pruned.
DetectionResult pelt(const FittedCost& fitted, double beta, const SearchConfig& cfg = {});

/// Greedy top-down splitting at the largest gain c(a,b) - c(a,s) - c(s,b).
DetectionResult binseg(const FittedCost& fitted, const StoppingRule& stop,
                       const SearchConfig& cfg = {});

/// Greedy merging from the finest admissible grid, removing the change whose
/// removal raises V the least.
DetectionResult bottomup(const FittedCost& fitted, const StoppingRule& stop,
                         const SearchConfig& cfg = {});

/// Peaks of the two-sided window discrepancy
///   Z(t) = c(t-h, t+h) - c(t-h, t) - c(t, t+h),  h = w / 2.
DetectionResult window(const FittedCost& fitted, const StoppingRule& stop,
                       const SearchConfig& cfg);

/// Z(t) at every admissible t (multiples of jump in [h, T-h]), as
/// (t, score) pairs in increasing t.
std::vector<std::pair<Index, double>> window_scores(const FittedCost& fitted,
                                                    const SearchConfig& cfg);

}  // namespace segscan
