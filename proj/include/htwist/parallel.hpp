#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace htwist::parallel {

enum class Exec { Parallel, Serial };

template <class Body>
void parallel_for(std::size_t n, Body&& body);
template <class Body>
void serial_for(std::size_t n, Body&& body);

/// Dispatches to parallel_for or serial_for.
template <class Body>
void run_for(Exec exec, std::size_t n, Body&& body) {
  if (exec == Exec::Serial) {
    serial_for(n, body);
  } else {
    parallel_for(n, body);
  }
}

/// Runs body(i) for i in [0, n) on the OpenMP team. The first exception thrown
/// by any iteration is rethrown on the calling thread after the loop joins.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr first;
  std::mutex guard;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

// Reference path for tests and benchmarks.
template <class Body>
void serial_for(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

int max_threads();
void set_threads(int threads);

}  // namespace htwist::parallel
