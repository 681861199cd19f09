#include <doctest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>

#include "covert/random.hpp"

using namespace covert;

TEST_CASE("substreams are keyed by seed, tag and index") {
  auto first = [](std::uint64_t seed, StreamTag tag, std::uint64_t i) { return substream(seed, tag, i)(); };
  CHECK(first(1, StreamTag::kSlot, 0) == first(1, StreamTag::kSlot, 0));
  CHECK(first(1, StreamTag::kSlot, 0) != first(1, StreamTag::kSlot, 1));
  CHECK(first(1, StreamTag::kSlot, 0) != first(2, StreamTag::kSlot, 0));
  CHECK(first(1, StreamTag::kSlot, 0) != first(1, StreamTag::kCase, 0));
  CHECK(splitmix64(0) != splitmix64(1));
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  for (unsigned threads : {1u, 2u, 5u}) {
    std::vector<std::atomic<int>> seen(1000);
    parallel_for(seen.size(), threads, [&](std::size_t i) { seen[i]++; });
    for (auto& s : seen) CHECK(s.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, threads, [](std::size_t i) {
                      if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
  }
}

TEST_CASE("pairwise sum") {
  std::vector<double> v(1001);
  std::iota(v.begin(), v.end(), 0.0);
  CHECK(pairwise_sum(v) == 500500.0);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  std::vector<double> tiny(1 << 20, 0.1);
  CHECK(pairwise_sum(tiny) == doctest::Approx(0.1 * (1 << 20)).epsilon(1e-14));
}
