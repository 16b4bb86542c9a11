#include <cmath>
#include <set>

#include "bellbayes/random_streams.hpp"
#include "doctest.h"

using namespace bellbayes;

TEST_CASE("splitmix64 reference output") {
  // First output of the reference SplitMix64 generator seeded with 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("substream seeds are a pure function of (master, index)") {
  CHECK(substream_seed(42, 7) == substream_seed(42, 7));
  std::set<std::uint64_t> seen;
  for (std::uint64_t master : {0ULL, 1ULL, 42ULL}) {
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(substream_seed(master, i));
  }
  CHECK(seen.size() == 3000);
}

TEST_CASE("streams replay exactly") {
  ReplicationStream a(9, 3);
  ReplicationStream b(9, 3);
  for (int i = 0; i < 1000; ++i) CHECK(a.uniform() == b.uniform());
}

TEST_CASE("uniform lies in [0, 1) with the right mean") {
  ReplicationStream s(1, 0);
  double sum = 0.0;
  constexpr int kDraws = 200'000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // sd of the mean is sqrt(1/12 / n) ~ 6.5e-4.
  CHECK(std::abs(sum / kDraws - 0.5) < 4 * std::sqrt(1.0 / 12.0 / kDraws));
}

TEST_CASE("bernoulli edge probabilities") {
  ReplicationStream s(5, 5);
  for (int i = 0; i < 10'000; ++i) {
    CHECK_FALSE(s.bernoulli(0.0));
    CHECK(s.bernoulli(1.0));
  }
}
