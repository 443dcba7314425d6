#pragma once

// Contiguous-chunk parallel loops with one private result per worker.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace albert::parallel {

inline unsigned effective_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(begin, end, tally) on [0, n) split into `workers` contiguous
/// chunks and returns the per-worker tallies in chunk order.
template <class Tally, class Body>
std::vector<Tally> map_chunks(std::uint64_t n, unsigned workers, const Tally& init, Body body) {
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(effective_workers(workers), 1, std::max<std::uint64_t>(n, 1)));
  std::vector<Tally> tallies(workers, init);
  if (workers == 1) {
    body(std::uint64_t{0}, n, tallies[0]);
    return tallies;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = n * w / workers, end = n * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        body(begin, end, tallies[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return tallies;
}

}  // namespace albert::parallel
