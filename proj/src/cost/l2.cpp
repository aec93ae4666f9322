#include "models.hpp"

#include <algorithm>

namespace segscan::detail {
namespace {

// c(a,b) = sum ||y_t - mean||^2 = sum ||y_t||^2 - ||sum y_t||^2 / n
class L2Model final : public CostModel {
 public:
  explicit L2Model(const Eigen::MatrixXd& y)
      : sums_(Eigen::MatrixXd::Zero(y.rows() + 1, y.cols())),
        squares_(Eigen::VectorXd::Zero(y.rows() + 1)) {
    for (Index t = 0; t < y.rows(); ++t) {
      sums_.row(t + 1) = sums_.row(t) + y.row(t);
      squares_(t + 1) = squares_(t) + y.row(t).squaredNorm();
    }
  }

  double evaluate(Index a, Index b) const override {
    const double n = static_cast<double>(b - a);
    const double total = squares_(b) - squares_(a);
    const double c = total - (sums_.row(b) - sums_.row(a)).squaredNorm() / n;
    return std::max(0.0, c);
  }

 private:
  Eigen::MatrixXd sums_;
  Eigen::VectorXd squares_;
};

}  // namespace

std::unique_ptr<CostModel> make_l2(const Eigen::MatrixXd& centered) {
  return std::make_unique<L2Model>(centered);
}

}  // namespace segscan::detail
