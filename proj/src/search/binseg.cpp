#include "common.hpp"

#include "segscan/error.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace segscan {
namespace {

struct Segment {
  Index start;
  Index end;
  Index split = -1;  // -1 when no admissible split exists
  double gain = -std::numeric_limits<double>::infinity();
};

Segment best_split(detail::SegmentCosts& costs, const AdmissibleGrid& grid, Index start,
                   Index end) {
  Segment seg{start, end};
  const Index m = grid.min_size;
  auto it = std::lower_bound(grid.points.begin(), grid.points.end(), start + m);
  if (it == grid.points.end() || *it > end - m) return seg;
  const double whole = costs(start, end);
  for (; it != grid.points.end() && *it <= end - m; ++it) {
    const double gain = whole - costs(start, *it) - costs(*it, end);
    if (gain > seg.gain) {
      seg.gain = gain;
      seg.split = *it;
    }
  }
  return seg;
}

}  // namespace

DetectionResult binseg(const FittedCost& fitted, const StoppingRule& stop,
                       const SearchConfig& cfg) {
  const AdmissibleGrid grid = admissible_grid(fitted, cfg);
  if (grid.max_changes() < 0) {
    fail(ErrorKind::Infeasible, "signal shorter than min_size " + std::to_string(grid.min_size));
  }
  detail::SegmentCosts costs(fitted);

  // Gains are computed once per segment and kept until that segment splits.
  std::vector<Segment> segments{best_split(costs, grid, 0, grid.n_samples)};
  std::vector<Index> changes;

  auto pick = [&]() -> std::ptrdiff_t {
    std::ptrdiff_t chosen = -1;
    for (std::size_t k = 0; k < segments.size(); ++k) {
      const Segment& s = segments[k];
      if (s.split < 0) continue;
      if (chosen < 0 || s.gain > segments[chosen].gain ||
          (s.gain == segments[chosen].gain && s.split < segments[chosen].split)) {
        chosen = static_cast<std::ptrdiff_t>(k);
      }
    }
    return chosen;
  };
  auto apply = [&](std::ptrdiff_t k) {
    const Segment s = segments[static_cast<std::size_t>(k)];
    changes.push_back(s.split);
    segments[static_cast<std::size_t>(k)] = best_split(costs, grid, s.start, s.split);
    segments.push_back(best_split(costs, grid, s.split, s.end));
  };
  auto current_ends = [&]() {
    std::vector<Index> ends = changes;
    std::sort(ends.begin(), ends.end());
    ends.push_back(grid.n_samples);
    return ends;
  };

  if (const auto* k = stop.get_if<NBkps>()) {
    while (static_cast<Index>(changes.size()) < k->count) {
      const auto chosen = pick();
      if (chosen < 0) {
        fail(ErrorKind::Infeasible, "binary segmentation ran out of admissible splits after " +
                                        std::to_string(changes.size()) + " changes");
      }
      apply(chosen);
    }
  } else if (const auto* pen = stop.get_if<Penalty>()) {
    for (auto chosen = pick(); chosen >= 0 && segments[chosen].gain > pen->beta; chosen = pick()) {
      apply(chosen);
    }
  } else {
    const double epsilon = stop.get_if<Budget>()->epsilon;
    while (costs.contrast(current_ends()) > epsilon) {
      const auto chosen = pick();
      if (chosen < 0) {
        fail(ErrorKind::BudgetUnreachable,
             "no admissible split left and V still exceeds the budget");
      }
      apply(chosen);
    }
  }
  return detail::make_result(costs, changes);
}

}  // namespace segscan
