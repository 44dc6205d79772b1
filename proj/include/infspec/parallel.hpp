#pragma once

namespace infspec {

// Name of the environment variable capping the worker count (0 or unset:
// OpenMP default).
inline constexpr const char* kThreadsEnv = "INFTY_SPEC_THREADS";

// Applies INFTY_SPEC_THREADS, if set, and returns the resulting worker count.
int configure_threads_from_env();

int max_threads();

}  // namespace infspec
