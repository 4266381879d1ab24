#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qent {

enum class Execution { Serial, Parallel };

// Upper bound on worker threads; 0 means the OpenMP runtime default.
void set_thread_cap(int threads);
int thread_cap();
// Reads QENT_THREADS (0 or unset = auto) into the thread cap.
void configure_threads_from_env();
// Threads a parallel region would use right now (1 without OpenMP).
int available_threads();

// out[i] = fn(i) for i in [0, n). Results are slot-indexed, so the output is
// identical for either execution mode. The serial path is the reference the
// parallel one is tested against. The first exception (lowest index) is
// rethrown after the loop.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn, Execution exec) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  auto run_one = [&](std::size_t i) {
    try {
      slots[i].emplace(fn(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
#ifdef _OPENMP
  if (exec == Execution::Parallel && n > 1) {
    const int cap = thread_cap();
    const int threads = cap > 0 ? cap : omp_get_max_threads();
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long long i = 0; i < count; ++i) run_one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  }
#else
  (void)exec;
  for (std::size_t i = 0; i < n; ++i) run_one(i);
#endif
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace qent
