#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace geflab {

template <typename R, typename Map, typename Combine>
R parallel_map_reduce(long long n, int workers, R identity, Map&& map, Combine&& combine) {
  workers = resolve_workers(workers);
  if (workers <= 1 || n < 2) {
    R acc = identity;
    for (long long i = 0; i < n; ++i) acc = combine(std::move(acc), map(i));
    return acc;
  }

  const long long chunk = (n + workers - 1) / workers;
  std::vector<R> parts(static_cast<std::size_t>(workers), identity);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        R local = identity;
        const long long lo = chunk * w;
        const long long hi = std::min(n, lo + chunk);
        for (long long i = lo; i < hi; ++i) local = combine(std::move(local), map(i));
        parts[std::size_t(w)] = std::move(local);
      } catch (...) {
        errors[std::size_t(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  R acc = identity;
  for (auto& part : parts) acc = combine(std::move(acc), std::move(part));
  return acc;
}

}  // namespace geflab
