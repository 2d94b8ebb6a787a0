#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace scatseq::detail {

// Splits [0, total) into fixed-size chunks (independent of the thread count)
// and runs fn(begin, end) for each. Results come back in chunk order, so any
// merge that folds them left to right is schedule independent.
template <class Result, class Fn>
std::vector<Result> run_chunks(std::uint64_t total, std::uint64_t chunk, unsigned threads, Fn fn) {
  chunk = std::max<std::uint64_t>(chunk, 1);
  const std::uint64_t num_chunks = (total + chunk - 1) / chunk;
  std::vector<Result> results(num_chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= num_chunks || failed.load()) return;
      try {
        const std::uint64_t begin = c * chunk;
        results[c] = fn(begin, std::min(total, begin + chunk));
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  const unsigned n = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(num_chunks, 1))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace scatseq::detail
