#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace covert {

using Rng = std::mt19937_64;

/// Stream families. Each Monte-Carlo consumer draws from its own family so
/// two estimators run with the same seed never share random numbers.
enum class StreamTag : std::uint64_t {
  kRate = 1,
  kSlot = 2,
  kMessage = 3,
  kCase = 4,
  kGeometry = 5,
  kDetection = 6,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Independent generator for trial `index`, keyed only by (seed, tag, index),
/// so aggregates never depend on evaluation order or worker count.
Rng substream(std::uint64_t seed, StreamTag tag, std::uint64_t index);

/// Worker count used when the caller passes 0.
unsigned default_threads();

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Work is split
/// into contiguous ranges; the first exception thrown is rethrown here.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = default_threads();
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Pairwise summation in a fixed tree order.
double pairwise_sum(std::span<const double> values);

}  // namespace covert
