#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

#include "setcalc/sampling.hpp"

namespace setcalc {

/// Evaluates fn(i) for i in [0, n) on parallelism() threads and returns the
/// results in index order. The first exception (by index) is rethrown.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, Fn fn) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(parallelism()), n);
  auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += std::max<std::size_t>(workers, 1)) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace setcalc
