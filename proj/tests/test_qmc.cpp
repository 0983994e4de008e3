#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dosefind/qmc.hpp"

using dosefind::num::SobolSequence;

TEST_CASE("dimension limits are enforced") {
  CHECK_THROWS_AS(SobolSequence(0), std::invalid_argument);
  CHECK_THROWS_AS(SobolSequence(9), std::invalid_argument);
  CHECK_NOTHROW(SobolSequence(1));
  CHECK_NOTHROW(SobolSequence(8));
}

TEST_CASE("points lie strictly inside the unit cube") {
  const SobolSequence seq(8, 77724869);
  const std::vector<double> pts = seq.generate(1 << 12);
  for (double x : pts) {
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
}

// Each coordinate of the first 2^m points hits every dyadic cell at
// resolution 2^r (r <= m) exactly 2^(m-r) times; a digital shift only
// permutes the cells.
static void check_stratified(std::uint64_t scramble) {
  const int dim = 6;
  const int m = 10;
  const std::size_t n = std::size_t{1} << m;
  const SobolSequence seq(dim, scramble);
  const std::vector<double> pts = seq.generate(n);
  const int r = 5;
  const int cells = 1 << r;
  for (int d = 0; d < dim; ++d) {
    std::vector<int> count(cells, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++count[static_cast<int>(pts[i * dim + d] * cells)];
    }
    for (int c = 0; c < cells; ++c) CHECK(count[c] == static_cast<int>(n >> r));
  }
}

TEST_CASE("one-dimensional projections are exactly stratified") {
  check_stratified(0);
  check_stratified(77724869);
}

TEST_CASE("the leading pair fills a dyadic grid evenly") {
  const int m = 10;
  const std::size_t n = std::size_t{1} << m;
  const SobolSequence seq(2, 0);
  const std::vector<double> pts = seq.generate(n);
  const int side = 1 << 5;
  std::vector<int> count(side * side, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int a = static_cast<int>(pts[i * 2] * side);
    const int b = static_cast<int>(pts[i * 2 + 1] * side);
    ++count[a * side + b];
  }
  for (int c = 0; c < side * side; ++c) CHECK(count[c] == 1);
}

TEST_CASE("scramble is deterministic in the seed") {
  const SobolSequence a(4, 123), b(4, 123), c(4, 124);
  const std::vector<double> pa = a.generate(256), pb = b.generate(256), pc = c.generate(256);
  CHECK(pa == pb);
  CHECK(pa != pc);
  // Zero seed means no shift; a nonzero seed must move the points.
  const SobolSequence plain(4, 0);
  CHECK(plain.generate(256) != pa);
}

TEST_CASE("coordinate means are centred") {
  const SobolSequence seq(4, 77724869);
  const std::size_t n = 1 << 14;
  const std::vector<double> pts = seq.generate(n);
  for (int d = 0; d < 4; ++d) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += pts[i * 4 + d];
    CHECK(std::fabs(sum / static_cast<double>(n) - 0.5) < 1e-3);
  }
}
