#pragma once

#include <chrono>
#include <exception>
#include <thread>
#include <vector>

namespace resd::sip::detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers with a static
// interleaved split; the first exception (lowest index) is rethrown.
template <class Fn>
void parallel_for(int n, int threads, Fn fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, n);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) {
        try {
          fn(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace resd::sip::detail
