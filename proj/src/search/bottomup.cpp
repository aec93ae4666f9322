#include "common.hpp"

#include "segscan/error.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace segscan {
namespace {

// Finest admissible segmentation: earliest-first packing of grid points.
std::vector<Index> finest_changes(const AdmissibleGrid& grid) {
  std::vector<Index> out;
  Index last = 0;
  for (Index t : grid.points) {
    if (t - last >= grid.min_size) {
      out.push_back(t);
      last = t;
    }
  }
  return out;
}

}  // namespace

DetectionResult bottomup(const FittedCost& fitted, const StoppingRule& stop,
                         const SearchConfig& cfg) {
  const AdmissibleGrid grid = admissible_grid(fitted, cfg);
  if (grid.max_changes() < 0) {
    fail(ErrorKind::Infeasible, "signal shorter than min_size " + std::to_string(grid.min_size));
  }
  detail::SegmentCosts costs(fitted);

  // Doubly linked chain over 0, changes..., T; node i sits at position[i].
  std::vector<Index> position{0};
  for (Index t : finest_changes(grid)) position.push_back(t);
  position.push_back(grid.n_samples);
  const std::size_t n = position.size();
  std::vector<std::size_t> left(n), right(n);
  for (std::size_t i = 0; i < n; ++i) {
    left[i] = i == 0 ? 0 : i - 1;
    right[i] = i + 1;
  }

  std::vector<double> merge_cost(n, 0.0);
  std::set<std::pair<double, Index>> queue;  // (delta, position): smallest delta, then index
  auto delta = [&](std::size_t i) {
    const Index a = position[left[i]];
    const Index s = position[i];
    const Index b = position[right[i]];
    return costs(a, b) - costs(a, s) - costs(s, b);
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    merge_cost[i] = delta(i);
    queue.emplace(merge_cost[i], position[i]);
  }
  auto node_of = [&](Index pos) {
    return static_cast<std::size_t>(
        std::lower_bound(position.begin(), position.end(), pos) - position.begin());
  };
  auto remove = [&](std::size_t i) {
    queue.erase({merge_cost[i], position[i]});
    const std::size_t l = left[i];
    const std::size_t r = right[i];
    right[l] = r;
    left[r] = l;
    for (std::size_t nb : {l, r}) {
      if (nb == 0 || nb == n - 1) continue;
      queue.erase({merge_cost[nb], position[nb]});
      merge_cost[nb] = delta(nb);
      queue.emplace(merge_cost[nb], position[nb]);
    }
  };

  const auto initial = static_cast<Index>(queue.size());
  if (const auto* k = stop.get_if<NBkps>()) {
    if (k->count > initial) {
      fail(ErrorKind::Infeasible, "finest admissible grid has only " + std::to_string(initial) +
                                      " changes, " + std::to_string(k->count) + " requested");
    }
    while (static_cast<Index>(queue.size()) > k->count) remove(node_of(queue.begin()->second));
  } else if (const auto* pen = stop.get_if<Penalty>()) {
    while (!queue.empty() && queue.begin()->first <= pen->beta) {
      remove(node_of(queue.begin()->second));
    }
  } else {
    const double epsilon = stop.get_if<Budget>()->epsilon;
    std::vector<Index> ends(position.begin() + 1, position.end());
    double v = costs.contrast(ends);
    if (v > epsilon) {
      fail(ErrorKind::BudgetUnreachable, "finest admissible segmentation already exceeds the budget");
    }
    while (!queue.empty() && v + queue.begin()->first <= epsilon) {
      v += queue.begin()->first;
      remove(node_of(queue.begin()->second));
    }
  }

  std::vector<Index> changes;
  for (std::size_t i = right[0]; i != n - 1; i = right[i]) changes.push_back(position[i]);
  return detail::make_result(costs, changes);
}

}  // namespace segscan
