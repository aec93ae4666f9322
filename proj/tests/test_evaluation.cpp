#include "support/oracles.hpp"

#include <doctest.h>

using namespace segscan;

namespace {

Breakpoints ends(std::vector<Index> e, Index n) { return validate_breakpoints(std::move(e), n); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::BadParam;
}

}  // namespace

TEST_CASE("hausdorff hand values") {
  CHECK(hausdorff(ends({3, 6}, 6), ends({3, 6}, 6)) == 0);
  CHECK(hausdorff(ends({3, 6}, 6), ends({4, 6}, 6)) == 1);
  CHECK(hausdorff(ends({6}, 6), ends({3, 6}, 6)) == 3);
  CHECK(hausdorff(ends({5, 10}, 10), ends({6, 10}, 10)) == 1);
  CHECK(hausdorff(ends({3, 7, 10}, 10), ends({3, 10}, 10)) == 3);
  CHECK(hausdorff(ends({10}, 10), ends({2, 10}, 10)) == 8);
  CHECK(kind_of([] { hausdorff(ends({5, 10}, 10), ends({5, 11}, 11)); }) ==
        ErrorKind::MismatchedLength);
}

TEST_CASE("rand index hand values") {
  CHECK(randindex(ends({2, 4}, 4), ends({2, 4}, 4)) == 1.0);
  // of the 6 pairs only (0,1) and (2,3) agree
  CHECK(randindex(ends({2, 4}, 4), ends({4}, 4)) == doctest::Approx(1.0 / 3.0));
  CHECK(randindex(ends({4}, 4), ends({1, 2, 3, 4}, 4)) == 0.0);
  CHECK(randindex(ends({2, 4}, 4), ends({1, 3, 4}, 4)) == 0.5);
  CHECK(randindex(ends({1}, 1), ends({1}, 1)) == 1.0);
  CHECK(kind_of([] { randindex(ends({3}, 3), ends({4}, 4)); }) == ErrorKind::MismatchedLength);
}

TEST_CASE("precision and recall hand values") {
  const auto exact = precision_recall(ends({50, 100}, 100), ends({50, 100}, 100), 5);
  CHECK(exact.precision == 1.0);
  CHECK(exact.recall == 1.0);

  const auto half = precision_recall(ends({30, 60, 100}, 100), ends({32, 80, 100}, 100), 5);
  CHECK(half.true_positives == 1);
  CHECK(half.precision == 0.5);
  CHECK(half.recall == 0.5);

  // one prediction cannot serve two true changes
  const auto shared = precision_recall(ends({10, 14, 100}, 100), ends({12, 100}, 100), 5);
  CHECK(shared.true_positives == 1);
  CHECK(shared.precision == 1.0);
  CHECK(shared.recall == 0.5);

  const auto none = precision_recall(ends({100}, 100), ends({100}, 100), 5);
  CHECK(none.precision == 1.0);
  CHECK(none.recall == 1.0);

  const auto empty_pred = precision_recall(ends({40, 100}, 100), ends({100}, 100), 5);
  CHECK(empty_pred.recall == 0.0);
  CHECK(empty_pred.precision == 0.0);

  const auto empty_truth = precision_recall(ends({100}, 100), ends({40, 100}, 100), 5);
  CHECK(empty_truth.precision == 0.0);
  CHECK(empty_truth.recall == 0.0);

  const auto near = precision_recall(ends({3, 6}, 6), ends({4, 6}, 6), 2);
  CHECK(near.precision == 1.0);
  CHECK(near.recall == 1.0);
  const auto strict = precision_recall(ends({3, 6}, 6), ends({4, 6}, 6), 0);
  CHECK(strict.precision == 0.0);
  CHECK(strict.recall == 0.0);

  const auto boundary = precision_recall(ends({50, 100}, 100), ends({55, 100}, 100), 5);
  CHECK(boundary.true_positives == 1);
  CHECK(precision_recall(ends({50, 100}, 100), ends({56, 100}, 100), 5).true_positives == 0);

  CHECK(kind_of([] { precision_recall(ends({5}, 5), ends({5}, 5), -1); }) == ErrorKind::BadParam);
}

TEST_CASE("greedy matching prefers the nearest prediction, ties to the smaller") {
  const auto r = precision_recall(ends({20, 100}, 100), ends({18, 22, 100}, 100), 5);
  CHECK(r.true_positives == 1);
  CHECK(r.precision == 0.5);
  const auto near = precision_recall(ends({20, 30, 100}, 100), ends({21, 26, 100}, 100), 5);
  CHECK(near.true_positives == 2);
}

TEST_CASE("metric properties on random segmentations") {
  Rng rng(211);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.below(60));
    const Breakpoints a = oracle::random_bkps(rng, n, 0.15);
    const Breakpoints b = oracle::random_bkps(rng, n, 0.15);
    const Breakpoints c = oracle::random_bkps(rng, n, 0.15);

    CHECK(hausdorff(a, a) == 0);
    CHECK(hausdorff(a, b) == hausdorff(b, a));
    CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c));
    CHECK((hausdorff(a, b) == 0) == (a == b));

    const double ri = randindex(a, b);
    CHECK(ri == randindex(b, a));
    CHECK(ri >= 0.0);
    CHECK(ri <= 1.0);
    CHECK(randindex(a, a) == 1.0);
    CHECK(ri == doctest::Approx(oracle::randindex_pairs(a, b)).epsilon(1e-12));

    const Index margin = static_cast<Index>(rng.below(6));
    const auto pr = precision_recall(a, b, margin);
    CHECK(pr.precision >= 0.0);
    CHECK(pr.precision <= 1.0);
    CHECK(pr.recall >= 0.0);
    CHECK(pr.recall <= 1.0);
    const auto self = precision_recall(a, a, margin);
    CHECK(self.precision == 1.0);
    CHECK(self.recall == 1.0);
    CHECK(pr.true_positives <= static_cast<Index>(a.changes().size()));
    CHECK(pr.true_positives <= static_cast<Index>(b.changes().size()));
    CHECK(precision_recall(a, b, margin + 3).true_positives >= pr.true_positives);
  }
}

TEST_CASE("rand index on a long signal uses exact counts") {
  const Index n = 100000;
  const Breakpoints a = ends({n / 2, n}, n);
  const Breakpoints b = ends({n / 2 + 1, n}, n);
  // only the n - 1 pairs involving sample n/2 disagree
  const double disagree = static_cast<double>(n - 1);
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  CHECK(randindex(a, b) == doctest::Approx(1.0 - disagree / pairs).epsilon(1e-14));
}
