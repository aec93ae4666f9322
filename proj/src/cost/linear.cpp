#include "models.hpp"

#include <algorithm>

namespace segscan::detail {

double ridge_rss(const Eigen::Ref<const Eigen::MatrixXd>& cross) {
  const Index p = cross.rows() - 1;
  Eigen::MatrixXd gram = cross.topLeftCorner(p, p);
  const Eigen::VectorXd xty = cross.topRightCorner(p, 1);
  const double yty = cross(p, p);
  Eigen::MatrixXd regularized = gram;
  regularized.diagonal().array() += kRegressionRidge;
  const Eigen::VectorXd beta = regularized.ldlt().solve(xty);
  const double rss = yty - 2.0 * beta.dot(xty) + beta.dot(gram * beta);
  return std::max(0.0, rss);
}

namespace {

// Column 0 is the response; the other columns plus an intercept regress it.
class LinearModel final : public CostModel {
 public:
  explicit LinearModel(const Eigen::MatrixXd& y)
      : width_(y.cols() + 1), cross_(Eigen::MatrixXd::Zero(width_ * width_, y.rows() + 1)) {
    Eigen::VectorXd z(width_);
    for (Index t = 0; t < y.rows(); ++t) {
      z.head(y.cols() - 1) = y.row(t).tail(y.cols() - 1).transpose();
      z(y.cols() - 1) = 1.0;
      z(y.cols()) = y(t, 0);
      const Eigen::MatrixXd zz = z * z.transpose();
      cross_.col(t + 1) = cross_.col(t) + zz.reshaped();
    }
  }

  double evaluate(Index a, Index b) const override {
    const Eigen::MatrixXd cross = (cross_.col(b) - cross_.col(a)).reshaped(width_, width_);
    return ridge_rss(cross);
  }

 private:
  Index width_;
  Eigen::MatrixXd cross_;
};

}  // namespace

std::unique_ptr<CostModel> make_linear(const Eigen::MatrixXd& centered) {
  return std::make_unique<LinearModel>(centered);
}

}  // namespace segscan::detail
