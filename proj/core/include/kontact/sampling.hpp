#ifndef KONTACT_SAMPLING_HPP
#define KONTACT_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "kontact/tensor.hpp"

namespace kontact {

/// Radical-inverse (van der Corput) value of `index` in the given base.
double radical_inverse(std::uint64_t index, std::uint64_t base);

/// Deterministic low-discrepancy sample plan: point i comes from Halton
/// indices seed + 1 + i, coordinate j uses the j-th prime base, mapped
/// affinely from [0,1) to [lo, hi].
struct SamplePlan {
  int dim = 0;
  int count = 20;
  std::uint64_t seed = 42;
  double lo = -1.0;
  double hi = 1.0;
};

std::vector<Vec> sample_points(const SamplePlan& plan);

} // namespace kontact

#endif
