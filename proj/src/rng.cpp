#include "dosefind/rng.hpp"

#include "dosefind/math.hpp"

namespace dosefind {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream) : gen_(mix_seed(master_seed, stream)) {}

double Rng::uniform01() {
  // 53-bit mantissa, offset by half a step so 0 and 1 are unreachable.
  return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() { return num::normal_quantile(uniform01()); }

}  // namespace dosefind
