#include "models.hpp"

namespace segscan::detail {

// (y - mean)' M (y - mean) = ||L'(y - mean)||^2 with M = L L', so the cost is
// L2 on the rows y_t' L.
std::unique_ptr<CostModel> make_mahalanobis(const Eigen::MatrixXd& centered,
                                            const Eigen::MatrixXd& metric) {
  Eigen::MatrixXd factor;
  Eigen::LLT<Eigen::MatrixXd> llt(metric);
  if (llt.info() == Eigen::Success) {
    factor = llt.matrixL();
  } else {
    // Semidefinite metric: M = V diag(lambda) V'.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(metric);
    factor = eig.eigenvectors() *
             eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  }
  return make_l2(centered * factor);
}

}  // namespace segscan::detail
