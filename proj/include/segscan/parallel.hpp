#pragma once

namespace segscan {

/// Worker count for internally parallel precomputation. Reads SEGSCAN_THREADS
/// (0 or unset = hardware concurrency); always at least 1.
unsigned thread_count();

}  // namespace segscan
