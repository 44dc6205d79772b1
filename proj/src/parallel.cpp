#include "infspec/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>

#include "infspec/errors.hpp"

namespace infspec {

int configure_threads_from_env() {
  const char* raw = std::getenv(kThreadsEnv);
  if (raw != nullptr && *raw != '\0') {
    int n = 0;
    const char* end = raw + std::strlen(raw);
    const auto [ptr, ec] = std::from_chars(raw, end, n);
    if (ec != std::errc{} || ptr != end || n < 0)
      throw ParameterError(std::string(kThreadsEnv) + " must be a non-negative integer");
    if (n > 0) omp_set_num_threads(n);
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace infspec
