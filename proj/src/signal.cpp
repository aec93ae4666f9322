#include "segscan/signal.hpp"

#include "segscan/cost.hpp"
#include "segscan/error.hpp"

#include <string>

namespace segscan {

Signal validate_signal(Eigen::MatrixXd data) {
  if (data.rows() == 0 || data.cols() == 0) {
    fail(ErrorKind::EmptySignal, "signal has no samples");
  }
  for (Index t = 0; t < data.rows(); ++t) {
    for (Index k = 0; k < data.cols(); ++k) {
      if (!std::isfinite(data(t, k))) {
        fail(ErrorKind::NonFiniteValue,
             "entry (" + std::to_string(t) + ", " + std::to_string(k) + ") is not finite");
      }
    }
  }
  return Signal(std::move(data));
}

Signal validate_signal(std::span<const double> values) {
  Eigen::MatrixXd data(static_cast<Index>(values.size()), 1);
  for (std::size_t t = 0; t < values.size(); ++t) data(static_cast<Index>(t), 0) = values[t];
  return validate_signal(std::move(data));
}

Signal validate_signal(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) fail(ErrorKind::EmptySignal, "signal has no samples");
  const std::size_t width = rows.front().size();
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (rows[t].size() != width) {
      fail(ErrorKind::RaggedInput, "row " + std::to_string(t) + " has " +
                                       std::to_string(rows[t].size()) + " values, expected " +
                                       std::to_string(width));
    }
  }
  Eigen::MatrixXd data(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t k = 0; k < width; ++k) {
      data(static_cast<Index>(t), static_cast<Index>(k)) = rows[t][k];
    }
  }
  return validate_signal(std::move(data));
}

std::vector<std::pair<Index, Index>> Breakpoints::segments() const {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(ends_.size());
  Index start = 0;
  for (Index end : ends_) {
    out.emplace_back(start, end);
    start = end;
  }
  return out;
}

bool Breakpoints::admissible(Index min_size, Index jump) const noexcept {
  Index start = 0;
  for (std::size_t i = 0; i < ends_.size(); ++i) {
    const Index end = ends_[i];
    if (end - start < min_size) return false;
    if (i + 1 < ends_.size() && end % jump != 0) return false;
    start = end;
  }
  return true;
}

Breakpoints validate_breakpoints(std::vector<Index> ends, Index n_samples) {
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const Index e = ends[i];
    if (e < 1 || e > n_samples) {
      fail(ErrorKind::OutOfRange,
           "end " + std::to_string(e) + " outside [1, " + std::to_string(n_samples) + "]");
    }
    if (i > 0 && e == ends[i - 1]) {
      fail(ErrorKind::Duplicate, "end " + std::to_string(e) + " repeated");
    }
    if (i > 0 && e < ends[i - 1]) {
      fail(ErrorKind::NotSorted, "end " + std::to_string(e) + " follows " +
                                     std::to_string(ends[i - 1]));
    }
  }
  if (ends.empty() || ends.back() != n_samples) {
    fail(ErrorKind::MissingTerminal, "last end must be " + std::to_string(n_samples));
  }
  return Breakpoints(std::move(ends));
}

Breakpoints whole_signal(Index n_samples) { return validate_breakpoints({n_samples}, n_samples); }

double sum_of_costs(const FittedCost& fitted, const Breakpoints& bkps) {
  if (bkps.n_samples() != fitted.n_samples()) {
    fail(ErrorKind::MismatchedLength, "breakpoints end at " + std::to_string(bkps.n_samples()) +
                                          " but the signal has " +
                                          std::to_string(fitted.n_samples()) + " samples");
  }
  double total = 0.0;
  Index start = 0;
  for (Index end : bkps.ends()) {
    total += fitted.cost(start, end);
    start = end;
  }
  return total;
}

}  // namespace segscan
