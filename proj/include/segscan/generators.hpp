#pragma once

#include "segscan/random.hpp"
#include "segscan/signal.hpp"

#include <cstdint>

namespace segscan {

struct GenSpec {
  Index n_samples = 100;
  Index n_dims = 1;
  Index n_bkps = 3;
  double noise_std = 1.0;
  std::uint64_t seed = 0;
  Index min_gap = 0;  // segment-length floor; raised to spacing_floor() when smaller
};

struct GeneratedSignal {
  Signal signal;
  Breakpoints bkps;
};

/// Default minimum segment length: max(2, ceil(T / (4 (K + 1)))).
Index spacing_floor(Index n_samples, Index n_bkps);

/// K change points drawn uniformly among all placements whose K + 1 segments
/// are at least max(min_gap, spacing_floor(T, K)) long. Throws
/// SpacingInfeasible when no placement exists.
Breakpoints draw_bkps(Index n_samples, Index n_bkps, std::uint64_t seed, Index min_gap = 0);
Breakpoints draw_bkps(Rng& rng, Index n_samples, Index n_bkps, Index min_gap = 0);

/// Piecewise-constant mean: adjacent segments differ by +-U[1,5] per
/// dimension, starting from 0, plus N(0, noise_std^2) noise.
GeneratedSignal pw_constant(const GenSpec& spec);

/// Piecewise-affine trend per dimension. Slopes are +-U[0.1,1] per sample
/// and differ by at least 0.1 between adjacent segments; each change flips a
/// coin for continuity, a discontinuity adding a +-U[1,5] offset.
GeneratedSignal pw_linear(const GenSpec& spec);

/// Zero-mean bivariate Gaussian with unit variances whose correlation
/// alternates +0.9, -0.9, ... across segments.
GeneratedSignal pw_normal(Index n_samples, Index n_bkps, std::uint64_t seed, Index min_gap = 0);

inline constexpr double kAlternatingCorrelation = 0.9;

}  // namespace segscan
