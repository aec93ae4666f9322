#include "segscan/generators.hpp"

#include "segscan/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

namespace segscan {
namespace {

void check_spec(const GenSpec& spec) {
  if (spec.n_samples < 1) fail(ErrorKind::BadParam, "T must be at least 1");
  if (spec.n_dims < 1) fail(ErrorKind::BadParam, "d must be at least 1");
  if (!std::isfinite(spec.noise_std) || spec.noise_std < 0.0) {
    fail(ErrorKind::BadParam, "noise_std must be finite and nonnegative");
  }
}

void add_noise(Eigen::MatrixXd& y, double sigma, Rng& rng) {
  if (sigma == 0.0) return;
  for (Index t = 0; t < y.rows(); ++t) {
    for (Index k = 0; k < y.cols(); ++k) y(t, k) += sigma * rng.normal();
  }
}

}  // namespace

Index spacing_floor(Index n_samples, Index n_bkps) {
  const Index parts = 4 * (n_bkps + 1);
  return std::max<Index>(2, (n_samples + parts - 1) / parts);
}

Breakpoints draw_bkps(Rng& rng, Index n_samples, Index n_bkps, Index min_gap) {
  if (n_bkps < 0) fail(ErrorKind::BadParam, "n_bkps must be nonnegative");
  const Index gap = std::max(min_gap, spacing_floor(n_samples, n_bkps));
  const Index slack = n_samples - (n_bkps + 1) * gap;
  if (slack < 0) {
    fail(ErrorKind::SpacingInfeasible,
         std::to_string(n_bkps + 1) + " segments of at least " + std::to_string(gap) +
             " samples do not fit in T = " + std::to_string(n_samples));
  }

  // Placements with gaps >= g are in bijection with K-subsets of
  // {0, ..., slack + K - 1}: sorted v_i maps to t_i = i g + v_i - (i - 1).
  // A uniform subset (Floyd's algorithm) is therefore a uniform placement.
  const auto pool = static_cast<std::uint64_t>(slack + n_bkps);
  std::unordered_set<std::uint64_t> picked;
  std::vector<std::uint64_t> subset;
  for (std::uint64_t j = pool - static_cast<std::uint64_t>(n_bkps); j < pool; ++j) {
    const std::uint64_t r = rng.below(j + 1);
    const std::uint64_t v = picked.contains(r) ? j : r;
    picked.insert(v);
    subset.push_back(v);
  }
  std::sort(subset.begin(), subset.end());

  std::vector<Index> ends;
  ends.reserve(static_cast<std::size_t>(n_bkps) + 1);
  for (Index i = 0; i < n_bkps; ++i) {
    const auto v = static_cast<Index>(subset[static_cast<std::size_t>(i)]);
    ends.push_back((i + 1) * gap + v - i);
  }
  ends.push_back(n_samples);
  return validate_breakpoints(std::move(ends), n_samples);
}

Breakpoints draw_bkps(Index n_samples, Index n_bkps, std::uint64_t seed, Index min_gap) {
  Rng rng(seed);
  return draw_bkps(rng, n_samples, n_bkps, min_gap);
}

GeneratedSignal pw_constant(const GenSpec& spec) {
  check_spec(spec);
  Rng rng(spec.seed);
  Breakpoints bkps = draw_bkps(rng, spec.n_samples, spec.n_bkps, spec.min_gap);

  Eigen::MatrixXd y(spec.n_samples, spec.n_dims);
  Eigen::RowVectorXd level = Eigen::RowVectorXd::Zero(spec.n_dims);
  bool first = true;
  for (const auto& [start, end] : bkps.segments()) {
    if (!first) {
      for (Index k = 0; k < spec.n_dims; ++k) level(k) += rng.sign() * rng.uniform(1.0, 5.0);
    }
    first = false;
    y.middleRows(start, end - start).rowwise() = level;
  }
  add_noise(y, spec.noise_std, rng);
  return {validate_signal(std::move(y)), std::move(bkps)};
}

GeneratedSignal pw_linear(const GenSpec& spec) {
  check_spec(spec);
  Rng rng(spec.seed);
  Breakpoints bkps = draw_bkps(rng, spec.n_samples, spec.n_bkps, spec.min_gap);
  const auto segments = bkps.segments();

  Eigen::MatrixXd y(spec.n_samples, spec.n_dims);
  for (Index k = 0; k < spec.n_dims; ++k) {
    double level = 0.0;
    double slope = 0.0;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      const auto [start, end] = segments[s];
      double next_slope = rng.sign() * rng.uniform(0.1, 1.0);
      while (s > 0 && std::abs(next_slope - slope) < 0.1) {
        next_slope = rng.sign() * rng.uniform(0.1, 1.0);
      }
      if (s > 0) {
        const bool continuous = rng.uniform() < 0.5;
        if (!continuous) level += rng.sign() * rng.uniform(1.0, 5.0);
      }
      slope = next_slope;
      for (Index t = start; t < end; ++t) y(t, k) = level + slope * static_cast<double>(t - start);
      level += slope * static_cast<double>(end - start);
    }
  }
  add_noise(y, spec.noise_std, rng);
  return {validate_signal(std::move(y)), std::move(bkps)};
}

GeneratedSignal pw_normal(Index n_samples, Index n_bkps, std::uint64_t seed, Index min_gap) {
  if (n_samples < 1) fail(ErrorKind::BadParam, "T must be at least 1");
  Rng rng(seed);
  Breakpoints bkps = draw_bkps(rng, n_samples, n_bkps, min_gap);

  Eigen::MatrixXd y(n_samples, 2);
  bool positive = true;
  for (const auto& [start, end] : bkps.segments()) {
    const double rho = positive ? kAlternatingCorrelation : -kAlternatingCorrelation;
    const double residual = std::sqrt(1.0 - rho * rho);
    for (Index t = start; t < end; ++t) {
      const double z1 = rng.normal();
      const double z2 = rng.normal();
      y(t, 0) = z1;
      y(t, 1) = rho * z1 + residual * z2;
    }
    positive = !positive;
  }
  return {validate_signal(std::move(y)), std::move(bkps)};
}

}  // namespace segscan
