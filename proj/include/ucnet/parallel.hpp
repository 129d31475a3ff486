#pragma once

// Thin OpenMP layer. Every parallel loop in the library writes results into
// per-index slots and merges them in index order afterwards, so the serial
// and threaded paths produce identical output.

#include <cstddef>
#include <cstdint>

namespace ucnet {

enum class Exec { Serial, Parallel };

/// Thread cap: UC_THREADS if set and positive, else the OpenMP default.
int max_threads();

namespace detail {
void parallel_for_impl(std::size_t n, void (*fn)(void*, std::size_t), void* ctx);
}

template <class F>
void parallel_for(std::size_t n, F&& f, Exec exec = Exec::Parallel) {
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  auto thunk = [](void* ctx, std::size_t i) { (*static_cast<F*>(ctx))(i); };
  detail::parallel_for_impl(n, thunk, const_cast<void*>(static_cast<const void*>(&f)));
}

/// splitmix64 finalizer; derives independent per-task seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace ucnet
