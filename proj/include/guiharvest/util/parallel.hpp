#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace guiharvest::util {

// Applies fn to every item on `workers` threads; results keep input order,
// so downstream output is independent of scheduling. The first exception is
// rethrown after all workers finish; fn should catch per-item errors it
// wants to survive.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, F fn, int workers)
    -> std::vector<decltype(fn(items[0]))> {
  using R = decltype(fn(items[0]));
  std::vector<R> results(items.size());
  if (items.empty()) return results;
  if (workers < 1) workers = 1;
  if (workers > static_cast<int>(items.size()))
    workers = static_cast<int>(items.size());

  if (workers == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        results[i] = fn(items[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace guiharvest::util
