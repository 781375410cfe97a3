#include "elmkit/parallel.hpp"

#include <cstdlib>
#include <string>

namespace elmkit {

std::size_t default_workers() {
  if (const char *env = std::getenv("ELMKIT_WORKERS")) {
    try {
      long value = std::stol(env);
      if (value > 0)
        return static_cast<std::size_t>(value);
    } catch (const std::exception &) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace elmkit
