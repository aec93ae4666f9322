#include "common.hpp"

#include "segscan/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace segscan {

DetectionResult pelt(const FittedCost& fitted, double beta, const SearchConfig& cfg) {
  if (!std::isfinite(beta) || beta < 0.0) {
    fail(ErrorKind::BadParam, "penalty must be finite and nonnegative");
  }
  const AdmissibleGrid grid = admissible_grid(fitted, cfg);
  const Index m = grid.min_size;
  if (grid.max_changes() < 0) {
    fail(ErrorKind::Infeasible, "signal shorter than min_size " + std::to_string(m));
  }

  std::vector<Index> nodes;
  nodes.reserve(grid.points.size() + 2);
  nodes.push_back(0);
  nodes.insert(nodes.end(), grid.points.begin(), grid.points.end());
  nodes.push_back(grid.n_samples);
  const std::size_t n = nodes.size();

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr Index kNever = std::numeric_limits<Index>::max();
  // best[j] = V + beta * (segments - 1) of the optimal segmentation of [0, nodes[j]).
  std::vector<double> best(n, kInf);
  std::vector<std::size_t> previous(n, 0);
  std::vector<double> last_cost(n, 0.0);
  // A candidate pruned while solving t stays usable for targets in [t, t + m):
  // only from t + m on is the detour through t itself admissible.
  std::vector<Index> expires(n, kNever);
  best[0] = -beta;

  const bool prune = fitted.spec().superadditive();
  std::vector<std::size_t> alive{0};
  std::vector<double> partial;  // best[s] + c(s, t) per alive candidate
  std::uint64_t evals = 0;
  std::uint64_t pruned = 0;

  for (std::size_t j = 1; j < n; ++j) {
    const Index t = nodes[j];
    std::erase_if(alive, [&](std::size_t s) {
      if (expires[s] > t) return false;
      ++pruned;
      return true;
    });

    partial.assign(alive.size(), kInf);
    for (std::size_t k = 0; k < alive.size(); ++k) {
      const std::size_t s = alive[k];
      if (t - nodes[s] < m) continue;
      const double c = fitted.cost(nodes[s], t);
      ++evals;
      partial[k] = best[s] + c;
      const double total = partial[k] + beta;
      if (total < best[j]) {
        best[j] = total;
        previous[j] = s;
        last_cost[j] = c;
      }
    }

    if (prune && best[j] < kInf) {
      for (std::size_t k = 0; k < alive.size(); ++k) {
        if (partial[k] < kInf && partial[k] > best[j]) expires[alive[k]] = std::min(expires[alive[k]], t + m);
      }
    }
    if (j + 1 < n && best[j] < kInf) alive.push_back(j);
  }

  if (!(best[n - 1] < kInf)) fail(ErrorKind::Infeasible, "no admissible segmentation");

  std::vector<Index> ends;
  std::vector<double> costs;
  for (std::size_t j = n - 1; j != 0; j = previous[j]) {
    ends.push_back(nodes[j]);
    costs.push_back(last_cost[j]);
  }
  std::reverse(ends.begin(), ends.end());
  std::reverse(costs.begin(), costs.end());
  double contrast = 0.0;
  for (double c : costs) contrast += c;

  return DetectionResult{.bkps = validate_breakpoints(std::move(ends), grid.n_samples),
                         .contrast = contrast,
                         .n_cost_evals = evals,
                         .n_pruned = pruned};
}

}  // namespace segscan
