#pragma once

#include <cstdint>
#include <random>

namespace dosefind {

// Deterministic per-replication random stream. Distribution transforms are
// implemented here rather than with <random>'s distribution objects so that
// sequences are identical across standard library implementations.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream);

  // Uniform on the open interval (0,1).
  double uniform01();

  // Standard normal via the inverse CDF.
  double normal();

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Stable mixing of a master seed with a substream index.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace dosefind
