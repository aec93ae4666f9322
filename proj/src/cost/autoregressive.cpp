#include "models.hpp"

#include <vector>

namespace segscan::detail {
namespace {

// Per dimension, y_t regressed on [y_{t-1}, ..., y_{t-p}, 1] over the rows
// t in [a+p, b), so every lag comes from inside the segment.
class AutoregressiveModel final : public CostModel {
 public:
  AutoregressiveModel(const Eigen::MatrixXd& y, Index order)
      : order_(order), width_(order + 2) {
    const Index n = y.rows();
    cross_.reserve(static_cast<std::size_t>(y.cols()));
    Eigen::VectorXd z(width_);
    for (Index k = 0; k < y.cols(); ++k) {
      Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(width_ * width_, n + 1);
      for (Index t = 0; t < n; ++t) {
        cross.col(t + 1) = cross.col(t);
        if (t < order_) continue;
        for (Index lag = 1; lag <= order_; ++lag) z(lag - 1) = y(t - lag, k);
        z(order_) = 1.0;
        z(order_ + 1) = y(t, k);
        const Eigen::MatrixXd zz = z * z.transpose();
        cross.col(t + 1) += zz.reshaped();
      }
      cross_.push_back(std::move(cross));
    }
  }

  double evaluate(Index a, Index b) const override {
    double total = 0.0;
    for (const auto& cross : cross_) {
      total += ridge_rss((cross.col(b) - cross.col(a + order_)).reshaped(width_, width_));
    }
    return total;
  }

 private:
  Index order_;
  Index width_;
  std::vector<Eigen::MatrixXd> cross_;  // per dimension; column t sums rows u < t
};

}  // namespace

std::unique_ptr<CostModel> make_autoregressive(const Eigen::MatrixXd& centered, Index order) {
  return std::make_unique<AutoregressiveModel>(centered, order);
}

}  // namespace segscan::detail
