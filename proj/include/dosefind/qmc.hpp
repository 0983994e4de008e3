#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dosefind::num {

// Sobol low-discrepancy sequence (up to 8 dimensions) with an optional
// digitally shifted scramble. Emitted coordinates lie strictly in (0,1).
class SobolSequence {
 public:
  explicit SobolSequence(int dim, std::uint64_t scramble_seed = 0);

  // Row-major n x dim block of the first n points.
  std::vector<double> generate(std::size_t n) const;

 private:
  int dim_;
  std::vector<std::uint32_t> directions_;  // dim_ x 32
  std::vector<std::uint32_t> shift_;       // per-dimension digital shift
};

}  // namespace dosefind::num
