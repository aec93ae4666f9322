#include "common.hpp"

#include "segscan/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

namespace segscan {
namespace {

Index half_width(const AdmissibleGrid& grid, const SearchConfig& cfg) {
  const Index w = cfg.window_width;
  if (w < 2 || w < 2 * grid.min_size) {
    fail(ErrorKind::BadParam, "window_width " + std::to_string(w) + " must be at least " +
                                  std::to_string(std::max<Index>(2, 2 * grid.min_size)));
  }
  if (w > grid.n_samples) {
    fail(ErrorKind::WindowTooLarge, "window_width " + std::to_string(w) + " exceeds T = " +
                                        std::to_string(grid.n_samples));
  }
  return w / 2;
}

std::vector<std::pair<Index, double>> scores(detail::SegmentCosts& costs,
                                             const AdmissibleGrid& grid, Index h) {
  std::vector<std::pair<Index, double>> out;
  for (Index t : grid.points) {
    if (t < h || t > grid.n_samples - h) continue;
    const double z = costs(t - h, t + h) - costs(t - h, t) - costs(t, t + h);
    out.emplace_back(t, z);
  }
  return out;
}

// Local maxima: strictly above the left neighbour and above the first
// differing value to the right, a missing neighbour at either end of the
// scored range counting as lower. A plateau reports its leftmost point; a
// range that is one plateau has no peak.
std::vector<std::pair<Index, double>> peaks(const std::vector<std::pair<Index, double>>& z) {
  std::vector<std::pair<Index, double>> out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const bool has_left = i > 0;
    if (has_left && !(z[i].second > z[i - 1].second)) continue;
    std::size_t q = i + 1;
    while (q < z.size() && z[q].second == z[i].second) ++q;
    const bool has_right = q < z.size();
    if (!has_left && !has_right) continue;
    if (!has_right || z[q].second < z[i].second) out.push_back(z[i]);
  }
  return out;
}

}  // namespace

std::vector<std::pair<Index, double>> window_scores(const FittedCost& fitted,
                                                    const SearchConfig& cfg) {
  const AdmissibleGrid grid = admissible_grid(fitted, cfg);
  detail::SegmentCosts costs(fitted);
  return scores(costs, grid, half_width(grid, cfg));
}

DetectionResult window(const FittedCost& fitted, const StoppingRule& stop,
                       const SearchConfig& cfg) {
  const AdmissibleGrid grid = admissible_grid(fitted, cfg);
  const Index h = half_width(grid, cfg);
  detail::SegmentCosts costs(fitted);

  auto ranked = peaks(scores(costs, grid, h));
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });

  // Peaks are taken by decreasing score, skipping any closer than m to one
  // already taken.
  std::vector<Index> chosen;
  auto spaced = [&](Index t) {
    return std::all_of(chosen.begin(), chosen.end(),
                       [&](Index u) { return std::abs(u - t) >= grid.min_size; });
  };

  if (const auto* k = stop.get_if<NBkps>()) {
    for (const auto& [t, z] : ranked) {
      if (static_cast<Index>(chosen.size()) == k->count) break;
      if (spaced(t)) chosen.push_back(t);
    }
    if (static_cast<Index>(chosen.size()) < k->count) {
      fail(ErrorKind::Infeasible, "window scores have only " + std::to_string(chosen.size()) +
                                      " separated peaks, " + std::to_string(k->count) +
                                      " requested");
    }
  } else if (const auto* pen = stop.get_if<Penalty>()) {
    for (const auto& [t, z] : ranked) {
      if (!(z > pen->beta)) break;
      if (spaced(t)) chosen.push_back(t);
    }
  } else {
    const double epsilon = stop.get_if<Budget>()->epsilon;
    auto within_budget = [&] {
      std::vector<Index> ends = chosen;
      std::sort(ends.begin(), ends.end());
      ends.push_back(grid.n_samples);
      return costs.contrast(ends) <= epsilon;
    };
    bool reached = within_budget();
    for (const auto& [t, z] : ranked) {
      if (reached) break;
      if (!spaced(t)) continue;
      chosen.push_back(t);
      reached = within_budget();
    }
    if (!reached) fail(ErrorKind::BudgetUnreachable, "window peaks exhausted above the budget");
  }
  return detail::make_result(costs, chosen);
}

}  // namespace segscan
