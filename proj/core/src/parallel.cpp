#include "coherent/parallel.hpp"

#include <cstdlib>

namespace coherent {

int worker_count() {
  if (const char* env = std::getenv("COHERENT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<int>(std::min(v, 256L));
    return 1;  // unparseable or non-positive: be conservative
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace coherent
