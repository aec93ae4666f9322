#include "models.hpp"

#include "segscan/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace segscan::detail {
namespace {

// c(a,b) = sum_t G_tt - (1/n) sum_{s,t} G_st over [a,b).
//
// prefix_(s, u) = sum_{v<u} G_sv, stored column-major so the rows s in [a,b)
// of columns a and b are contiguous; a query costs O(b - a).
class KernelModel final : public CostModel {
 public:
  KernelModel(const Eigen::MatrixXd& y, KernelKind kind, double gamma)
      : prefix_(y.rows(), y.rows() + 1), diagonal_(Eigen::VectorXd::Zero(y.rows() + 1)) {
    const Index n = y.rows();
    auto kernel = [&](Index s, Index u) {
      if (kind == KernelKind::Linear) return y.row(s).dot(y.row(u));
      return std::exp(-gamma * (y.row(s) - y.row(u)).squaredNorm());
    };

    // Rows are independent, so splitting them across workers leaves every
    // entry bit-identical to the serial result.
    auto fill_rows = [&](Index first, Index last) {
      for (Index s = first; s < last; ++s) prefix_(s, 0) = 0.0;
      for (Index u = 0; u < n; ++u) {
        for (Index s = first; s < last; ++s) prefix_(s, u + 1) = prefix_(s, u) + kernel(s, u);
      }
    };
    const unsigned workers =
        n < 512 ? 1u : std::min<unsigned>(thread_count(), static_cast<unsigned>(n / 256));
    if (workers <= 1) {
      fill_rows(0, n);
    } else {
      std::vector<std::thread> pool;
      const Index chunk = (n + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const Index first = std::min<Index>(n, w * chunk);
        const Index last = std::min<Index>(n, first + chunk);
        if (first < last) pool.emplace_back(fill_rows, first, last);
      }
      for (auto& th : pool) th.join();
    }

    for (Index t = 0; t < n; ++t) diagonal_(t + 1) = diagonal_(t) + kernel(t, t);
  }

  double evaluate(Index a, Index b) const override {
    const Index len = b - a;
    const double cross =
        (prefix_.col(b).segment(a, len) - prefix_.col(a).segment(a, len)).sum();
    const double c = (diagonal_(b) - diagonal_(a)) - cross / static_cast<double>(len);
    return std::max(0.0, c);
  }

 private:
  Eigen::MatrixXd prefix_;
  Eigen::VectorXd diagonal_;
};

}  // namespace

std::unique_ptr<CostModel> make_kernel(const Eigen::MatrixXd& centered, KernelKind kind,
                                       double gamma) {
  return std::make_unique<KernelModel>(centered, kind, gamma);
}

}  // namespace segscan::detail
