#pragma once

#include "segscan/search.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace segscan::detail {

// Memoized c(a,b) lookups for one engine call. Counts only fresh evaluations.
class SegmentCosts {
 public:
  explicit SegmentCosts(const FittedCost& fitted) : fitted_(fitted) {}

  double operator()(Index start, Index end);

  /// V(ends) folded left to right, matching sum_of_costs bit for bit.
  double contrast(const std::vector<Index>& ends);

  std::uint64_t fresh() const noexcept { return fresh_; }
  Index n_samples() const noexcept { return fitted_.n_samples(); }

 private:
  const FittedCost& fitted_;
  std::unordered_map<std::uint64_t, double> cache_;
  std::uint64_t fresh_ = 0;
};

DetectionResult make_result(SegmentCosts& costs, std::vector<Index> ends);

}  // namespace segscan::detail
