#include "common.hpp"

#include "segscan/error.hpp"

#include <cmath>
#include <string>

namespace segscan {
namespace {

// Pair costs are memoized while the upper triangle stays below this many
// entries (64 MiB of doubles); beyond that, extending the table re-evaluates.
constexpr std::size_t kMemoLimit = std::size_t{8} << 20;

}  // namespace

void DynpEngine::prepare(const FittedCost& fitted, const SearchConfig& cfg) {
  const AdmissibleGrid grid = admissible_grid(fitted, cfg);
  if (!value_.empty() && key_id_ == fitted.id() && key_min_size_ == grid.min_size &&
      key_jump_ == grid.jump) {
    return;
  }
  key_id_ = fitted.id();
  key_min_size_ = grid.min_size;
  key_jump_ = grid.jump;

  min_size_ = grid.min_size;
  max_changes_ = grid.max_changes();
  nodes_.clear();
  nodes_.push_back(0);
  nodes_.insert(nodes_.end(), grid.points.begin(), grid.points.end());
  nodes_.push_back(grid.n_samples);

  value_.clear();
  next_.clear();
  first_cost_.clear();
  memo_.clear();
  const std::size_t n = nodes_.size();
  if (n * (n - 1) / 2 <= kMemoLimit) memo_.assign(n * (n - 1) / 2, std::nan(""));
}

double DynpEngine::pair_cost(const FittedCost& fitted, std::size_t from, std::size_t to) {
  if (memo_.empty()) {
    ++fresh_evals_;
    return fitted.cost(nodes_[from], nodes_[to]);
  }
  const std::size_t n = nodes_.size();
  const std::size_t slot = from * n - from * (from + 1) / 2 + (to - from - 1);
  if (std::isnan(memo_[slot])) {
    ++fresh_evals_;
    memo_[slot] = fitted.cost(nodes_[from], nodes_[to]);
  }
  return memo_[slot];
}

void DynpEngine::extend(const FittedCost& fitted, Index n_bkps) {
  const std::size_t n = nodes_.size();
  const std::size_t last = n - 1;

  if (value_.empty()) {
    std::vector<double> row(n, kInf);
    for (std::size_t i = 0; i < last; ++i) {
      if (nodes_[last] - nodes_[i] >= min_size_) row[i] = pair_cost(fitted, i, last);
    }
    value_.push_back(std::move(row));
    next_.emplace_back();
    first_cost_.emplace_back();
  }

  const auto first_new = static_cast<std::size_t>(retained_changes() + 1);
  const auto target = static_cast<std::size_t>(n_bkps);
  if (first_new > target) return;
  for (std::size_t k = first_new; k <= target; ++k) {
    value_.emplace_back(n, kInf);
    next_.emplace_back(n, last);
    first_cost_.emplace_back(n, kInf);
  }

  // Suffixes are solved right to left, so value_[k-1][j] is final for every
  // j > i; each pair cost is fetched once for all new rows.
  for (std::size_t i = last; i-- > 0;) {
    for (std::size_t j = i + 1; j < last; ++j) {
      if (nodes_[j] - nodes_[i] < min_size_) continue;
      bool reachable = false;
      for (std::size_t k = first_new; k <= target; ++k) {
        if (value_[k - 1][j] < kInf) {
          reachable = true;
          break;
        }
      }
      if (!reachable) continue;
      const double c = pair_cost(fitted, i, j);
      for (std::size_t k = first_new; k <= target; ++k) {
        const double candidate = c + value_[k - 1][j];
        // Strict comparison keeps the smallest j among ties.
        if (candidate < value_[k][i]) {
          value_[k][i] = candidate;
          next_[k][i] = j;
          first_cost_[k][i] = c;
        }
      }
    }
  }
}

DetectionResult DynpEngine::extract(Index n_bkps) const {
  std::vector<Index> ends;
  std::vector<double> costs;
  std::size_t i = 0;
  for (auto k = static_cast<std::size_t>(n_bkps); k >= 1; --k) {
    costs.push_back(first_cost_[k][i]);
    i = next_[k][i];
    ends.push_back(nodes_[i]);
  }
  costs.push_back(value_[0][i]);
  ends.push_back(nodes_.back());

  double contrast = 0.0;
  for (double c : costs) contrast += c;
  const Index n_samples = nodes_.back();
  return DetectionResult{.bkps = validate_breakpoints(std::move(ends), n_samples),
                         .contrast = contrast,
                         .n_cost_evals = 0,
                         .n_pruned = 0};
}

DetectionResult DynpEngine::solve(const FittedCost& fitted, Index n_bkps,
                                  const SearchConfig& cfg) {
  if (n_bkps < 0) fail(ErrorKind::BadParam, "n_bkps must be nonnegative");
  prepare(fitted, cfg);
  if (n_bkps > max_changes_) {
    fail(ErrorKind::Infeasible, "no segmentation with " + std::to_string(n_bkps) +
                                    " changes satisfies min_size " + std::to_string(min_size_) +
                                    " and jump " + std::to_string(key_jump_));
  }
  fresh_evals_ = 0;
  if (n_bkps > retained_changes()) extend(fitted, n_bkps);
  if (!(value_[static_cast<std::size_t>(n_bkps)][0] < kInf)) {
    fail(ErrorKind::Infeasible, "no admissible segmentation with " + std::to_string(n_bkps) +
                                    " changes");
  }
  DetectionResult result = extract(n_bkps);
  result.n_cost_evals = fresh_evals_;
  return result;
}

DetectionResult DynpEngine::solve_budget(const FittedCost& fitted, double epsilon,
                                         const SearchConfig& cfg) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    fail(ErrorKind::BadParam, "budget must be finite and nonnegative");
  }
  prepare(fitted, cfg);
  if (max_changes_ < 0) {
    fail(ErrorKind::Infeasible, "signal shorter than min_size " + std::to_string(min_size_));
  }
  fresh_evals_ = 0;
  // Scanning K upward, the first optimum within budget has the fewest changes.
  for (Index k = 0; k <= max_changes_; ++k) {
    if (k > retained_changes()) {
      // Without the pair memo each extension re-evaluates, so grow geometrically.
      const Index target =
          memo_.empty() ? std::min(max_changes_, std::max(k, 2 * retained_changes() + 1)) : k;
      extend(fitted, target);
    }
    if (!(value_[static_cast<std::size_t>(k)][0] < kInf)) continue;
    DetectionResult result = extract(k);
    if (result.contrast <= epsilon) {
      result.n_cost_evals = fresh_evals_;
      return result;
    }
  }
  fail(ErrorKind::BudgetUnreachable,
       "V exceeds the budget even with " + std::to_string(max_changes_) + " changes");
}

DetectionResult dynp(const FittedCost& fitted, Index n_bkps, const SearchConfig& cfg) {
  DynpEngine engine;
  return engine.solve(fitted, n_bkps, cfg);
}

DetectionResult solve_budget(const FittedCost& fitted, double epsilon, const SearchConfig& cfg) {
  DynpEngine engine;
  return engine.solve_budget(fitted, epsilon, cfg);
}

}  // namespace segscan
