#pragma once

#include "segscan/cost.hpp"

#include <Eigen/Dense>

#include <memory>

namespace segscan::detail {

// Each factory receives the signal with its column means removed. Every
// family here is translation invariant, and centering keeps the prefix-sum
// differences well conditioned.
std::unique_ptr<CostModel> make_l2(const Eigen::MatrixXd& centered);
std::unique_ptr<CostModel> make_normal(const Eigen::MatrixXd& centered);
std::unique_ptr<CostModel> make_linear(const Eigen::MatrixXd& centered);
std::unique_ptr<CostModel> make_autoregressive(const Eigen::MatrixXd& centered, Index order);
std::unique_ptr<CostModel> make_kernel(const Eigen::MatrixXd& centered, KernelKind kind,
                                       double gamma);
std::unique_ptr<CostModel> make_mahalanobis(const Eigen::MatrixXd& centered,
                                            const Eigen::MatrixXd& metric);

/// Residual sum of squares of the ridge regression whose cross-products are
/// packed as [[X'X, X'y], [y'X, y'y]] (response last).
double ridge_rss(const Eigen::Ref<const Eigen::MatrixXd>& cross);

}  // namespace segscan::detail
