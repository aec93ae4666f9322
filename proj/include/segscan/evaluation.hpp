#pragma once

#include "segscan/signal.hpp"

namespace segscan {

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  Index true_positives = 0;
};

/// Worst-case distance in samples between the two end sets, terminal T
/// included on both sides. Throws MismatchedLength for different T.
Index hausdorff(const Breakpoints& first, const Breakpoints& second);

/// Fraction of sample pairs (u < v) on which the segmentations agree about
/// co-membership. Computed from segment overlap counts; 1 when T = 1.
double randindex(const Breakpoints& first, const Breakpoints& second);

/// Greedy one-to-one matching of change points (terminal excluded): true
/// changes in increasing order each take the nearest unmatched prediction
/// within `margin`, ties to the smaller index. Both sides empty gives (1, 1).
PrecisionRecall precision_recall(const Breakpoints& truth, const Breakpoints& predicted,
                                 Index margin);

}  // namespace segscan
