#include "dosefind/qmc.hpp"

#include <random>
#include <stdexcept>

namespace dosefind::num {

namespace {

// Primitive polynomial degrees, encoded inner coefficients, and initial
// direction integers for dimensions 2..8 (dimension 1 is van der Corput).
struct DirectionSeed {
  int degree;
  std::uint32_t poly;
  std::uint32_t m[5];
};

constexpr DirectionSeed kSeeds[] = {
    {1, 0, {1, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0}},
    {4, 4, {1, 3, 5, 13, 0}},
    {5, 2, {1, 1, 5, 5, 17}},
};

}  // namespace

SobolSequence::SobolSequence(int dim, std::uint64_t scramble_seed) : dim_(dim) {
  if (dim < 1 || dim > 8) throw std::invalid_argument("SobolSequence: dim must be in [1,8]");
  directions_.assign(static_cast<std::size_t>(dim) * 32, 0);
  for (int k = 0; k < 32; ++k) directions_[k] = 1u << (31 - k);
  for (int d = 1; d < dim; ++d) {
    const DirectionSeed& s = kSeeds[d - 1];
    std::uint32_t* v = &directions_[static_cast<std::size_t>(d) * 32];
    for (int k = 0; k < s.degree; ++k) v[k] = s.m[k] << (31 - k);
    for (int k = s.degree; k < 32; ++k) {
      v[k] = v[k - s.degree] ^ (v[k - s.degree] >> s.degree);
      for (int j = 1; j < s.degree; ++j) {
        if ((s.poly >> (s.degree - 1 - j)) & 1u) v[k] ^= v[k - j];
      }
    }
  }
  shift_.assign(dim, 0);
  if (scramble_seed != 0) {
    std::mt19937_64 gen(scramble_seed);
    for (int d = 0; d < dim; ++d) shift_[d] = static_cast<std::uint32_t>(gen() >> 32);
  }
}

std::vector<double> SobolSequence::generate(std::size_t n) const {
  std::vector<double> out(n * static_cast<std::size_t>(dim_));
  std::vector<std::uint32_t> x(dim_, 0);
  constexpr double scale = 1.0 / 4294967296.0;  // 2^-32
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      // Gray-code step: flip the direction of the lowest zero bit of i-1.
      std::size_t c = 0;
      std::size_t v = i - 1;
      while (v & 1) {
        v >>= 1;
        ++c;
      }
      for (int d = 0; d < dim_; ++d) x[d] ^= directions_[static_cast<std::size_t>(d) * 32 + c];
    }
    for (int d = 0; d < dim_; ++d) {
      out[i * dim_ + d] = (static_cast<double>(x[d] ^ shift_[d]) + 0.5) * scale;
    }
  }
  return out;
}

}  // namespace dosefind::num
