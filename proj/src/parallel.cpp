#include "segscan/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace segscan {

unsigned thread_count() {
  unsigned requested = 0;
  if (const char* env = std::getenv("SEGSCAN_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) requested = static_cast<unsigned>(value);
    } catch (...) {
      requested = 0;
    }
  }
  if (requested == 0) requested = std::thread::hardware_concurrency();
  return requested == 0 ? 1u : requested;
}

}  // namespace segscan
