#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hardyz {

/// Fixed-size fork/join executor. Work is split into contiguous index blocks;
/// callers store results by index so the outcome never depends on the
/// number of threads.
class Executor {
 public:
  explicit Executor(unsigned threads = 1) : threads_(std::max(1u, threads)) {}

  static Executor hardware() { return Executor(std::max(1u, std::thread::hardware_concurrency())); }

  unsigned threads() const noexcept { return threads_; }

  /// Calls `body(i)` for every i in [0, count). Exceptions thrown by any
  /// worker are rethrown on the calling thread (the lowest index wins).
  template <class Body>
  void parallel_for(std::size_t count, Body&& body) const {
    if (count == 0) return;
    const std::size_t workers = std::min<std::size_t>(threads_, count);
    if (workers == 1) {
      for (std::size_t i = 0; i < count; ++i) body(i);
      return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          const std::size_t begin = count * w / workers;
          const std::size_t end = count * (w + 1) / workers;
          for (std::size_t i = begin; i < end; ++i) {
            try {
              body(i);
            } catch (...) {
              errors[w] = std::current_exception();
              return;
            }
          }
        });
      }
    }
    for (std::size_t w = 0; w < workers; ++w) {
      if (errors[w]) std::rethrow_exception(errors[w]);
    }
  }

  /// Maps `fn` over [0, count) into a vector in index order.
  template <class Fn>
  auto map(std::size_t count, Fn&& fn) const {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out(count);
    parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
    return out;
  }

 private:
  unsigned threads_;
};

}  // namespace hardyz
