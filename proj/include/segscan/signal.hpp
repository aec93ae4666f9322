#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace segscan {

using Index = Eigen::Index;

/// Observed process y_1..y_T with values in R^d, stored as a T x d matrix
/// (samples as rows). Immutable once constructed; every entry is finite.
class Signal {
 public:
  const Eigen::MatrixXd& data() const noexcept { return data_; }
  Index n_samples() const noexcept { return data_.rows(); }
  Index n_dims() const noexcept { return data_.cols(); }

  auto sample(Index t) const { return data_.row(t); }

 private:
  explicit Signal(Eigen::MatrixXd data) : data_(std::move(data)) {}

  friend Signal validate_signal(Eigen::MatrixXd data);

  Eigen::MatrixXd data_;
};

/// Takes ownership of a T x d matrix. Throws EmptySignal when T or d is zero
/// and NonFiniteValue on any NaN/Inf.
Signal validate_signal(Eigen::MatrixXd data);

/// Univariate input; normalizes to T x 1.
Signal validate_signal(std::span<const double> values);

/// Row-major nested input. Throws RaggedInput when rows differ in length.
Signal validate_signal(const std::vector<std::vector<double>>& rows);

/// A segmentation encoded by its strictly increasing segment ends. The last
/// end is always T, so segments are [0,t_1), [t_1,t_2), ..., [t_K, T).
class Breakpoints {
 public:
  const std::vector<Index>& ends() const noexcept { return ends_; }
  Index n_samples() const noexcept { return ends_.back(); }
  /// Number of change points K; the terminal T does not count.
  Index n_changes() const noexcept { return static_cast<Index>(ends_.size()) - 1; }
  /// Change points only (ends without the terminal).
  std::span<const Index> changes() const noexcept {
    return {ends_.data(), ends_.size() - 1};
  }

  /// Half-open [start, end) pairs in increasing order.
  std::vector<std::pair<Index, Index>> segments() const;

  /// True iff every segment is at least `min_size` long and every change
  /// point is a multiple of `jump`.
  bool admissible(Index min_size, Index jump) const noexcept;

  friend bool operator==(const Breakpoints&, const Breakpoints&) = default;

 private:
  explicit Breakpoints(std::vector<Index> ends) : ends_(std::move(ends)) {}

  friend Breakpoints validate_breakpoints(std::vector<Index> ends, Index n_samples);

  std::vector<Index> ends_;
};

/// Errors, checked in this order per entry: OutOfRange, Duplicate, NotSorted;
/// then MissingTerminal if the last end is not T (or the list is empty).
Breakpoints validate_breakpoints(std::vector<Index> ends, Index n_samples);

/// The no-change segmentation [T].
Breakpoints whole_signal(Index n_samples);

struct DetectionResult {
  Breakpoints bkps;
  double contrast = 0.0;            // V(bkps, y), penalty excluded
  std::uint64_t n_cost_evals = 0;   // fresh c(a,b) evaluations made by this call
  std::uint64_t n_pruned = 0;       // candidates discarded by pruning (pelt only)
};

/// V + beta * K.
inline double penalized_objective(const DetectionResult& result, double beta) {
  return result.contrast + beta * static_cast<double>(result.bkps.n_changes());
}

class FittedCost;

/// V(bkps, y): the sum of c(a,b) over the segments, accumulated left to right.
/// Throws MismatchedLength when bkps does not end at the fitted signal's T and
/// SegmentTooShort when a segment is shorter than the cost's minimum.
double sum_of_costs(const FittedCost& fitted, const Breakpoints& bkps);

}  // namespace segscan
