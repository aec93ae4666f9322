#pragma once

#include "segscan/signal.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>

namespace segscan {

enum class CostFamily { L2, Normal, Linear, AR, Kernel, Mahalanobis };
enum class KernelKind { Linear, Rbf };

std::string_view family_name(CostFamily family) noexcept;

/// Which c(.) to fit, with its family-specific parameters. Unused fields are
/// ignored by the other families.
struct CostSpec {
  CostFamily family = CostFamily::L2;
  Index ar_order = 4;
  KernelKind kernel = KernelKind::Rbf;
  std::optional<double> gamma;             // rbf bandwidth; nullopt = median heuristic
  std::optional<Eigen::MatrixXd> metric;   // Mahalanobis M; nullopt = inverse covariance

  static CostSpec l2() { return {}; }
  static CostSpec normal() { return of(CostFamily::Normal); }
  static CostSpec linear() { return of(CostFamily::Linear); }
  static CostSpec autoregressive(Index order = 4) {
    CostSpec spec = of(CostFamily::AR);
    spec.ar_order = order;
    return spec;
  }
  static CostSpec kernel_linear() {
    CostSpec spec = of(CostFamily::Kernel);
    spec.kernel = KernelKind::Linear;
    return spec;
  }
  static CostSpec rbf(std::optional<double> gamma = std::nullopt) {
    CostSpec spec = of(CostFamily::Kernel);
    spec.gamma = gamma;
    return spec;
  }
  static CostSpec mahalanobis(std::optional<Eigen::MatrixXd> metric = std::nullopt) {
    CostSpec spec = of(CostFamily::Mahalanobis);
    spec.metric = std::move(metric);
    return spec;
  }

  /// c(a,b) >= c(a,s) + c(s,b) for every a < s < b. PELT only prunes
  /// candidates when this holds.
  bool superadditive() const noexcept {
    return family == CostFamily::L2 || family == CostFamily::Kernel ||
           family == CostFamily::Mahalanobis;
  }

 private:
  static CostSpec of(CostFamily family) {
    CostSpec spec;
    spec.family = family;
    return spec;
  }
};

/// Ridge added to segment covariances by the Normal cost.
inline constexpr double kNormalRidge = 1e-6;
/// Ridge added to the normal-equation Gram by the Linear and AR costs.
inline constexpr double kRegressionRidge = 1e-8;
/// Ridge added to the whole-signal covariance before inverting it for
/// Mahalanobis "auto".
inline constexpr double kMetricRidge = 1e-6;
/// Kernel costs refuse signals longer than this (the Gram is T x T).
inline constexpr Index kMaxKernelSamples = 20000;
/// Pair count above which the median heuristic subsamples.
inline constexpr Index kMedianHeuristicPairs = 10000;
inline constexpr std::uint64_t kMedianHeuristicSeed = 0x5E65CA7ULL;

struct Bandwidth {
  double gamma = 1.0;
  bool degenerate = false;  // median distance was 0; gamma fell back to 1
};

/// gamma = 1 / median of pairwise squared distances. Uses all pairs up to
/// kMedianHeuristicPairs, otherwise that many seeded random pairs.
/// Throws SignalTooShort for T < 2.
Bandwidth median_heuristic(const Signal& signal);

namespace detail {

class CostModel {
 public:
  virtual ~CostModel() = default;
  virtual double evaluate(Index start, Index end) const = 0;
};

}  // namespace detail

/// A cost family bound to one signal. Summaries (prefix sums, Gram row
/// prefixes, regression cross-products) are computed once by fit(); each
/// cost() query then reads them. Read-only after fit apart from the
/// evaluation counter, which is atomic, so concurrent queries are safe.
class FittedCost {
 public:
  FittedCost(FittedCost&&) noexcept = default;
  FittedCost& operator=(FittedCost&&) noexcept = default;

  const CostSpec& spec() const noexcept { return state_->spec; }
  const Signal& signal() const noexcept { return state_->signal; }
  Index n_samples() const noexcept { return state_->signal.n_samples(); }
  Index min_seg_len() const noexcept { return state_->min_seg_len; }

  /// Bandwidth actually used by an rbf kernel (meaningless otherwise).
  const Bandwidth& bandwidth() const noexcept { return state_->bandwidth; }

  /// c(start, end) on the half-open segment [start, end). Throws
  /// IndexOutOfRange unless 0 <= start < end <= T, and SegmentTooShort when
  /// end - start < min_seg_len(). Each successful call bumps eval_count().
  double cost(Index start, Index end) const;

  std::uint64_t eval_count() const noexcept {
    return state_->evals.load(std::memory_order_relaxed);
  }

  /// Distinct per fit() call; engines key retained tables on it.
  std::uint64_t id() const noexcept { return state_->id; }

 private:
  struct State {
    State(CostSpec s, Signal y) : spec(std::move(s)), signal(std::move(y)) {}

    CostSpec spec;
    Signal signal;
    Index min_seg_len = 1;
    Bandwidth bandwidth;
    std::unique_ptr<detail::CostModel> model;
    std::uint64_t id = 0;
    mutable std::atomic<std::uint64_t> evals{0};
  };

  explicit FittedCost(std::unique_ptr<State> state) : state_(std::move(state)) {}

  friend FittedCost fit(const CostSpec& spec, const Signal& signal);

  std::unique_ptr<State> state_;
};

/// Errors: BadParam (malformed parameters for the family), SignalTooShort
/// (T below the family's minimum segment length), MemoryBudget (kernel with
/// T > kMaxKernelSamples).
FittedCost fit(const CostSpec& spec, const Signal& signal);

inline double cost(const FittedCost& fitted, Index start, Index end) {
  return fitted.cost(start, end);
}

}  // namespace segscan
