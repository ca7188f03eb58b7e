#include "kontact/sampling.hpp"

#include "kontact/error.hpp"

namespace kontact {

namespace {

constexpr std::uint64_t kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                     43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
constexpr int kMaxDim = static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0]));

} // namespace

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double result = 0.0;
  double inv_base = 1.0 / static_cast<double>(base);
  double frac = inv_base;
  while (index > 0) {
    result += static_cast<double>(index % base) * frac;
    index /= base;
    frac *= inv_base;
  }
  return result;
}

std::vector<Vec> sample_points(const SamplePlan& plan) {
  if (plan.dim < 1 || plan.dim > kMaxDim) throw Error("sample_points: unsupported dimension");
  if (plan.count < 0) throw Error("sample_points: negative count");
  if (!(plan.lo < plan.hi)) throw Error("sample_points: empty box");
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(plan.count));
  for (int i = 0; i < plan.count; ++i) {
    Vec x(static_cast<std::size_t>(plan.dim));
    for (int j = 0; j < plan.dim; ++j) {
      double u = radical_inverse(plan.seed + 1 + static_cast<std::uint64_t>(i),
                                 kPrimes[static_cast<std::size_t>(j)]);
      x[static_cast<std::size_t>(j)] = plan.lo + (plan.hi - plan.lo) * u;
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

} // namespace kontact
