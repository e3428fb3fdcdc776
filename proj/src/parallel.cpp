#include "asym/parallel.hpp"

#include <cstdlib>
#include <string>

namespace asym {

std::size_t thread_count() {
  if (const char* env = std::getenv("ASYM_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace asym
