#include "common.hpp"

#include "segscan/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace segscan {

StoppingRule StoppingRule::n_bkps(Index count) {
  if (count < 0) fail(ErrorKind::BadParam, "n_bkps must be nonnegative");
  return StoppingRule(NBkps{count});
}

StoppingRule StoppingRule::penalty(double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    fail(ErrorKind::BadParam, "penalty must be finite and nonnegative");
  }
  return StoppingRule(Penalty{beta});
}

StoppingRule StoppingRule::budget(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    fail(ErrorKind::BadParam, "budget must be finite and nonnegative");
  }
  return StoppingRule(Budget{epsilon});
}

AdmissibleGrid admissible_grid(const FittedCost& fitted, const SearchConfig& cfg) {
  if (cfg.min_size < 1) fail(ErrorKind::BadParam, "min_size must be at least 1");
  if (cfg.jump < 1) fail(ErrorKind::BadParam, "jump must be at least 1");
  AdmissibleGrid grid;
  grid.n_samples = fitted.n_samples();
  grid.min_size = std::max(cfg.min_size, fitted.min_seg_len());
  grid.jump = cfg.jump;
  const Index first = (grid.min_size + grid.jump - 1) / grid.jump * grid.jump;
  for (Index t = first; t <= grid.n_samples - grid.min_size; t += grid.jump) {
    grid.points.push_back(t);
  }
  return grid;
}

Index AdmissibleGrid::max_changes() const {
  if (n_samples < min_size) return -1;
  // Earliest-first greedy packing; the grid already keeps T - t >= min_size.
  Index count = 0;
  Index last = 0;
  for (Index t : points) {
    if (t - last >= min_size) {
      ++count;
      last = t;
    }
  }
  return count;
}

namespace detail {

double SegmentCosts::operator()(Index start, Index end) {
  const auto key = static_cast<std::uint64_t>(start) *
                       static_cast<std::uint64_t>(fitted_.n_samples() + 1) +
                   static_cast<std::uint64_t>(end);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const double c = fitted_.cost(start, end);
  ++fresh_;
  cache_.emplace(key, c);
  return c;
}

double SegmentCosts::contrast(const std::vector<Index>& ends) {
  double total = 0.0;
  Index start = 0;
  for (Index end : ends) {
    total += (*this)(start, end);
    start = end;
  }
  return total;
}

DetectionResult make_result(SegmentCosts& costs, std::vector<Index> ends) {
  std::sort(ends.begin(), ends.end());
  ends.push_back(costs.n_samples());
  const double v = costs.contrast(ends);
  return DetectionResult{.bkps = validate_breakpoints(std::move(ends), costs.n_samples()),
                         .contrast = v,
                         .n_cost_evals = costs.fresh(),
                         .n_pruned = 0};
}

}  // namespace detail
}  // namespace segscan
