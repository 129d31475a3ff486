#include "ucnet/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <mutex>

namespace ucnet {

int max_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("UC_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0 && cap < n) n = cap;
  }
  return n < 1 ? 1 : n;
}

namespace detail {

void parallel_for_impl(std::size_t n, void (*fn)(void*, std::size_t), void* ctx) {
  std::exception_ptr err;
  std::mutex mu;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
  for (long long i = 0; i < count; ++i) {
    try {
      fn(ctx, static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace detail
}  // namespace ucnet
