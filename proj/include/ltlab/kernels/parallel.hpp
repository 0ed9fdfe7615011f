#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace ltlab::kernels {

/// How replica loops run. Both modes produce identical results: each replica
/// owns its random substream and writes its own output slot, and reductions
/// happen afterwards in index order.
enum class Execution { serial, parallel };

void set_thread_count(int n);
int thread_count();

/// Calls fn(i) for i in [0, n). Exceptions thrown by any replica are rethrown
/// on the calling thread (the first one caught wins).
template <class Fn>
void for_each_replica(std::size_t n, Execution exec, Fn&& fn) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace ltlab::kernels
