#include "models.hpp"

#include "segscan/error.hpp"
#include "segscan/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace segscan {

std::string_view family_name(CostFamily family) noexcept {
  switch (family) {
    case CostFamily::L2: return "l2";
    case CostFamily::Normal: return "normal";
    case CostFamily::Linear: return "linear";
    case CostFamily::AR: return "ar";
    case CostFamily::Kernel: return "kernel";
    case CostFamily::Mahalanobis: return "mahalanobis";
  }
  return "unknown";
}

namespace {

double median_of(std::vector<double>& values) {
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  const double upper = *mid;
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

Index min_segment_length(const CostSpec& spec, Index dims) {
  switch (spec.family) {
    case CostFamily::Normal:
    case CostFamily::Linear: return dims + 1;
    case CostFamily::AR: return spec.ar_order + 2;
    default: return 1;
  }
}

Eigen::MatrixXd checked_metric(const Eigen::MatrixXd& metric, Index dims) {
  if (metric.rows() != dims || metric.cols() != dims) {
    fail(ErrorKind::BadParam, "Mahalanobis metric must be " + std::to_string(dims) + "x" +
                                  std::to_string(dims));
  }
  if (!metric.allFinite()) fail(ErrorKind::BadParam, "Mahalanobis metric is not finite");
  const double scale = 1.0 + metric.cwiseAbs().maxCoeff();
  if ((metric - metric.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    fail(ErrorKind::BadParam, "Mahalanobis metric is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(metric, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10 * scale) {
    fail(ErrorKind::BadParam, "Mahalanobis metric is not positive semidefinite");
  }
  return 0.5 * (metric + metric.transpose());
}

Eigen::MatrixXd inverse_covariance(const Eigen::MatrixXd& centered) {
  const double n = static_cast<double>(centered.rows());
  Eigen::MatrixXd cov = centered.transpose() * centered / n;
  cov.diagonal().array() += kMetricRidge;
  return cov.llt().solve(Eigen::MatrixXd::Identity(cov.rows(), cov.cols()));
}

}  // namespace

Bandwidth median_heuristic(const Signal& signal) {
  const Index n = signal.n_samples();
  if (n < 2) fail(ErrorKind::SignalTooShort, "median heuristic needs at least 2 samples");
  const auto& y = signal.data();

  std::vector<double> distances;
  const Index n_pairs = n * (n - 1) / 2;
  if (n_pairs <= kMedianHeuristicPairs) {
    distances.reserve(static_cast<std::size_t>(n_pairs));
    for (Index s = 0; s < n; ++s) {
      for (Index t = s + 1; t < n; ++t) distances.push_back((y.row(s) - y.row(t)).squaredNorm());
    }
  } else {
    Rng rng(kMedianHeuristicSeed);
    distances.reserve(static_cast<std::size_t>(kMedianHeuristicPairs));
    const auto count = static_cast<std::uint64_t>(n);
    while (static_cast<Index>(distances.size()) < kMedianHeuristicPairs) {
      const auto s = static_cast<Index>(rng.below(count));
      const auto t = static_cast<Index>(rng.below(count));
      if (s == t) continue;
      distances.push_back((y.row(s) - y.row(t)).squaredNorm());
    }
  }

  const double median = median_of(distances);
  if (!(median > 0.0)) return {.gamma = 1.0, .degenerate = true};
  return {.gamma = 1.0 / median, .degenerate = false};
}

double FittedCost::cost(Index start, Index end) const {
  const Index n = n_samples();
  if (start < 0 || end > n || start >= end) {
    fail(ErrorKind::IndexOutOfRange, "segment [" + std::to_string(start) + ", " +
                                         std::to_string(end) + ") not within [0, " +
                                         std::to_string(n) + "]");
  }
  if (end - start < state_->min_seg_len) {
    fail(ErrorKind::SegmentTooShort, "segment [" + std::to_string(start) + ", " +
                                         std::to_string(end) + ") shorter than " +
                                         std::to_string(state_->min_seg_len));
  }
  state_->evals.fetch_add(1, std::memory_order_relaxed);
  return state_->model->evaluate(start, end);
}

FittedCost fit(const CostSpec& spec, const Signal& signal) {
  static std::atomic<std::uint64_t> next_id{1};

  const Index n = signal.n_samples();
  const Index dims = signal.n_dims();

  if (spec.family == CostFamily::AR && (spec.ar_order < 1 || spec.ar_order >= n)) {
    fail(ErrorKind::BadParam, "AR order " + std::to_string(spec.ar_order) +
                                  " must lie in [1, T) with T = " + std::to_string(n));
  }
  if (spec.family == CostFamily::Kernel && spec.kernel == KernelKind::Rbf && spec.gamma &&
      !(std::isfinite(*spec.gamma) && *spec.gamma > 0.0)) {
    fail(ErrorKind::BadParam, "rbf bandwidth must be positive and finite");
  }
  Eigen::MatrixXd metric;
  if (spec.family == CostFamily::Mahalanobis && spec.metric) {
    metric = checked_metric(*spec.metric, dims);
  }

  const Index min_len = min_segment_length(spec, dims);
  if (n < min_len) {
    fail(ErrorKind::SignalTooShort, std::string(family_name(spec.family)) + " cost needs " +
                                        std::to_string(min_len) + " samples, signal has " +
                                        std::to_string(n));
  }
  if (spec.family == CostFamily::Kernel && n > kMaxKernelSamples) {
    fail(ErrorKind::MemoryBudget, "kernel cost limited to " + std::to_string(kMaxKernelSamples) +
                                      " samples");
  }

  auto state = std::make_unique<FittedCost::State>(spec, signal);
  state->min_seg_len = min_len;
  state->id = next_id.fetch_add(1, std::memory_order_relaxed);

  const Eigen::MatrixXd centered = signal.data().rowwise() - signal.data().colwise().mean();
  switch (spec.family) {
    case CostFamily::L2: state->model = detail::make_l2(centered); break;
    case CostFamily::Normal: state->model = detail::make_normal(centered); break;
    case CostFamily::Linear: state->model = detail::make_linear(centered); break;
    case CostFamily::AR:
      state->model = detail::make_autoregressive(centered, spec.ar_order);
      break;
    case CostFamily::Kernel: {
      if (spec.kernel == KernelKind::Rbf) {
        if (spec.gamma) {
          state->bandwidth = {.gamma = *spec.gamma, .degenerate = false};
        } else {
          state->bandwidth = median_heuristic(signal);
        }
      }
      state->model = detail::make_kernel(centered, spec.kernel, state->bandwidth.gamma);
      break;
    }
    case CostFamily::Mahalanobis:
      if (!spec.metric) metric = inverse_covariance(centered);
      state->model = detail::make_mahalanobis(centered, metric);
      break;
  }
  return FittedCost(std::move(state));
}

}  // namespace segscan
