#pragma once

#include <cstddef>
#include <functional>

namespace realid {

/// Index-parallel map handed to modules by the caller. With one worker the
/// body runs inline in index order.
class ParallelMap {
 public:
  /// threads == 0 picks std::thread::hardware_concurrency().
  explicit ParallelMap(std::size_t threads = 1);

  std::size_t threads() const { return threads_; }

  /// Calls body(i) for every i in [0, count). The first exception thrown by
  /// any call is rethrown after all workers have joined.
  void for_each(std::size_t count, const std::function<void(std::size_t)>& body) const;

 private:
  std::size_t threads_;
};

}  // namespace realid
