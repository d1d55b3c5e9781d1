#include "uniformity_lab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace ulab {
namespace {

std::atomic<std::size_t> g_override{0};
thread_local bool t_in_worker = false;

std::size_t env_worker_count() {
  static const std::size_t value = [] {
    std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("UNIFORMITY_LAB_THREADS")) {
      try {
        const long parsed = std::stol(env);
        if (parsed >= 1) n = static_cast<std::size_t>(parsed);
      } catch (const std::exception&) {
        // unparsable values fall back to the hardware default
      }
    }
    return n;
  }();
  return value;
}

}  // namespace

std::size_t worker_count() {
  const std::size_t o = g_override.load();
  return o != 0 ? o : env_worker_count();
}

void set_worker_count(std::size_t n) { g_override.store(n); }

void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), n_tasks);
  if (workers <= 1 || t_in_worker) {
    for (std::size_t i = 0; i < n_tasks; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run = [&] {
    const bool was_worker = t_in_worker;
    t_in_worker = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) break;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    t_in_worker = was_worker;
  };

  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(run);
  run();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ulab
