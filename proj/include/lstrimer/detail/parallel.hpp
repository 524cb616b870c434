#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace lstrimer {

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers = std::min<std::size_t>(resolve_thread_count(threads), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  // Strided assignment; each worker remembers its first failure.
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::size_t> error_index(workers, count);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < count; k += workers) {
          try {
            fn(k);
          } catch (...) {
            errors[w] = std::current_exception();
            error_index[w] = k;
            return;
          }
        }
      });
    }
  }
  // Rethrow the failure at the smallest index so results are deterministic.
  std::size_t best = count;
  std::exception_ptr first;
  for (unsigned w = 0; w < workers; ++w) {
    if (errors[w] && error_index[w] < best) {
      best = error_index[w];
      first = errors[w];
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace lstrimer
