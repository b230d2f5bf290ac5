#include "disorder/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace disorder {

void parallel_for(std::size_t n, unsigned n_threads,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (n_threads == 0) n_threads = std::thread::hardware_concurrency();
  if (n_threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(n_threads, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace disorder
