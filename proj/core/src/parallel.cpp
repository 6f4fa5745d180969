#include "ttn/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ttn {

size_t resolve_threads(size_t requested) {
  if (requested != 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc != 0 ? hc : 1;
}

void parallel_stripes(size_t stripes, size_t threads,
                      const std::function<void(size_t)>& fn) {
  if (stripes == 0) return;
  threads = std::min(resolve_threads(threads), stripes);
  if (threads <= 1) {
    for (size_t s = 0; s < stripes; ++s) fn(s);
    return;
  }

  std::atomic<size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;

  auto worker = [&] {
    for (;;) {
      const size_t s = next.fetch_add(1);
      if (s >= stripes) return;
      try {
        fn(s);
      } catch (...) {
        std::lock_guard lock(err_mutex);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (size_t t = 0; t + 1 < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  if (err) std::rethrow_exception(err);
}

} // namespace ttn
