#include "qent/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qent {

namespace {
std::atomic<int> g_thread_cap{0};
}

void set_thread_cap(int threads) { g_thread_cap.store(threads < 0 ? 0 : threads); }

int thread_cap() { return g_thread_cap.load(); }

void configure_threads_from_env() {
  const char* env = std::getenv("QENT_THREADS");
  if (env == nullptr || *env == '\0') return;
  try {
    set_thread_cap(std::stoi(env));
  } catch (const std::exception&) {
    set_thread_cap(0);
  }
}

int available_threads() {
#ifdef _OPENMP
  const int cap = thread_cap();
  return cap > 0 ? cap : omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qent
