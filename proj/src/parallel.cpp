#include "fsvd/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace fsvd {

int thread_count() {
  static const int count = [] {
    int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("FSVD_THREADS")) {
      try {
        int requested = std::stoi(env);
        if (requested >= 1) return std::min(requested, hw);
      } catch (const std::exception&) {
      }
    }
    return hw;
  }();
  return count;
}

}  // namespace fsvd
