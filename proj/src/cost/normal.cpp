#include "models.hpp"

#include <cmath>

namespace segscan::detail {
namespace {

// c(a,b) = n log det(cov + ridge I), cov the biased segment covariance.
class NormalModel final : public CostModel {
 public:
  explicit NormalModel(const Eigen::MatrixXd& y)
      : dims_(y.cols()),
        sums_(Eigen::MatrixXd::Zero(y.rows() + 1, y.cols())),
        outer_(Eigen::MatrixXd::Zero(y.cols() * y.cols(), y.rows() + 1)) {
    for (Index t = 0; t < y.rows(); ++t) {
      sums_.row(t + 1) = sums_.row(t) + y.row(t);
      const Eigen::MatrixXd xx = y.row(t).transpose() * y.row(t);
      outer_.col(t + 1) = outer_.col(t) + xx.reshaped();
    }
  }

  double evaluate(Index a, Index b) const override {
    const double n = static_cast<double>(b - a);
    const Eigen::VectorXd mean = (sums_.row(b) - sums_.row(a)).transpose() / n;
    Eigen::MatrixXd cov = (outer_.col(b) - outer_.col(a)).reshaped(dims_, dims_) / n;
    cov -= mean * mean.transpose();
    cov.diagonal().array() += kNormalRidge;
    return n * log_det(cov);
  }

 private:
  static double log_det(const Eigen::MatrixXd& m) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    }
    // Rounding pushed an eigenvalue below zero; clamp to the ridge.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().array().max(kNormalRidge).log().sum();
  }

  Index dims_;
  Eigen::MatrixXd sums_;
  Eigen::MatrixXd outer_;  // column t holds sum_{u<t} y_u y_u' flattened
};

}  // namespace

std::unique_ptr<CostModel> make_normal(const Eigen::MatrixXd& centered) {
  return std::make_unique<NormalModel>(centered);
}

}  // namespace segscan::detail
