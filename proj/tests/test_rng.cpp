#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "dosefind/rng.hpp"

using namespace dosefind;

TEST_CASE("same seed and stream reproduce the sequence") {
  Rng a(42, 7);
  Rng b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("streams are separated") {
  Rng a(42, 7);
  Rng b(42, 8);
  int same = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() == b.next_u64()) ++same;
  }
  CHECK(same == 0);
}

TEST_CASE("mix_seed is stable and spreads nearby inputs") {
  CHECK(mix_seed(1, 0) == mix_seed(1, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t master : {0ULL, 1ULL, 31118101ULL}) {
    for (std::uint64_t stream = 0; stream < 100; ++stream) seen.insert(mix_seed(master, stream));
  }
  CHECK(seen.size() == 300);
}

TEST_CASE("uniform01 stays strictly inside the unit interval") {
  Rng rng(2026, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // 3 standard errors of the mean of U(0,1).
  CHECK(std::fabs(sum / n - 0.5) < 3.0 * 0.2886751 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("normal draws have the right first two moments") {
  Rng rng(2026, 1);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::fabs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));
}
