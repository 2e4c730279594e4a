#include "mmtc/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mmtc {

namespace {

std::atomic<unsigned> g_override{0};
thread_local bool t_inside_pool = false;

unsigned env_worker_count() {
  if (const char* env = std::getenv("MMTC_AGG_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace

unsigned worker_count() {
  const unsigned forced = g_override.load();
  return forced > 0 ? forced : env_worker_count();
}

void set_worker_count(unsigned n) { g_override.store(n); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f) {
  if (count == 0) return;
  const unsigned workers = std::min<std::size_t>(worker_count(), count);
  // Nested calls run serially; the outer pool already owns the cores.
  if (workers <= 1 || t_inside_pool) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t chunk = std::max<std::size_t>(1, count / (8 * workers));
  struct PoolFlagGuard {
    bool saved;
    PoolFlagGuard() : saved(t_inside_pool) { t_inside_pool = true; }
    ~PoolFlagGuard() { t_inside_pool = saved; }
  };
  auto body = [&] {
    PoolFlagGuard guard;
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= count) return;
      const std::size_t end = std::min(count, begin + chunk);
      try {
        for (std::size_t i = begin; i < end; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace mmtc
