#include "segscan/evaluation.hpp"

#include "segscan/error.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace segscan {
namespace {

void require_same_length(const Breakpoints& first, const Breakpoints& second) {
  if (first.n_samples() != second.n_samples()) {
    fail(ErrorKind::MismatchedLength, "segmentations of " + std::to_string(first.n_samples()) +
                                          " and " + std::to_string(second.n_samples()) +
                                          " samples");
  }
}

Index directed(const std::vector<Index>& from, const std::vector<Index>& to) {
  Index worst = 0;
  for (Index s : from) {
    // `to` is sorted; the nearest element is at or just before lower_bound.
    auto it = std::lower_bound(to.begin(), to.end(), s);
    Index nearest = it == to.end() ? s - to.back() : *it - s;
    if (it != to.begin()) nearest = std::min(nearest, s - *std::prev(it));
    worst = std::max(worst, nearest);
  }
  return worst;
}

std::uint64_t pairs(std::uint64_t n) { return n == 0 ? 0 : n * (n - 1) / 2; }

std::uint64_t same_segment_pairs(const std::vector<Index>& ends) {
  std::uint64_t total = 0;
  Index start = 0;
  for (Index end : ends) {
    total += pairs(static_cast<std::uint64_t>(end - start));
    start = end;
  }
  return total;
}

}  // namespace

Index hausdorff(const Breakpoints& first, const Breakpoints& second) {
  require_same_length(first, second);
  return std::max(directed(first.ends(), second.ends()), directed(second.ends(), first.ends()));
}

double randindex(const Breakpoints& first, const Breakpoints& second) {
  require_same_length(first, second);
  const auto n = static_cast<std::uint64_t>(first.n_samples());
  const std::uint64_t total = pairs(n);
  if (total == 0) return 1.0;

  const std::uint64_t same_first = same_segment_pairs(first.ends());
  const std::uint64_t same_second = same_segment_pairs(second.ends());
  std::uint64_t same_both = 0;

  // Overlaps of the two partitions are the gaps of the merged end list.
  const auto& a = first.ends();
  const auto& b = second.ends();
  std::size_t i = 0;
  std::size_t j = 0;
  Index prev = 0;
  while (i < a.size() && j < b.size()) {
    const Index e = std::min(a[i], b[j]);
    same_both += pairs(static_cast<std::uint64_t>(e - prev));
    prev = e;
    if (a[i] == e) ++i;
    if (b[j] == e) ++j;
  }

  // Agreements: together in both, plus apart in both.
  const std::uint64_t apart_both = total - same_first - same_second + same_both;
  return static_cast<double>(same_both + apart_both) / static_cast<double>(total);
}

PrecisionRecall precision_recall(const Breakpoints& truth, const Breakpoints& predicted,
                                 Index margin) {
  require_same_length(truth, predicted);
  if (margin < 0) fail(ErrorKind::BadParam, "margin must be nonnegative");
  const auto true_changes = truth.changes();
  const auto pred_changes = predicted.changes();
  if (true_changes.empty() && pred_changes.empty()) {
    return {.precision = 1.0, .recall = 1.0, .true_positives = 0};
  }

  std::vector<bool> used(pred_changes.size(), false);
  Index hits = 0;
  for (Index t : true_changes) {
    std::ptrdiff_t match = -1;
    Index match_distance = 0;
    for (std::size_t k = 0; k < pred_changes.size(); ++k) {
      if (used[k]) continue;
      const Index dist = std::abs(pred_changes[k] - t);
      if (dist > margin) continue;
      // Predictions are sorted, so strict < keeps the smaller index on ties.
      if (match < 0 || dist < match_distance) {
        match = static_cast<std::ptrdiff_t>(k);
        match_distance = dist;
      }
    }
    if (match >= 0) {
      used[static_cast<std::size_t>(match)] = true;
      ++hits;
    }
  }
  const auto denom = [](std::size_t count) {
    return static_cast<double>(std::max<std::size_t>(1, count));
  };
  return {.precision = static_cast<double>(hits) / denom(pred_changes.size()),
          .recall = static_cast<double>(hits) / denom(true_changes.size()),
          .true_positives = hits};
}

}  // namespace segscan
