#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bouquet/log_model.hpp"

namespace bouquet::detail {

// Seeded source with a platform-independent mapping from bits to doubles.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // a + 10^U(log10 lo, log10 hi)
  double log_offset(double a, double lo, double hi) {
    return a + std::pow(10.0, uniform(std::log10(lo), std::log10(hi)));
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

 private:
  std::mt19937_64 gen_;
};

// Largest Re used for sampled tract points; keeps F(z) representable.
inline constexpr double kSampleReMax = 600.0;

// Random point of the tract `id`, with Re spread log-uniformly over the tract.
ComplexPoint sample_in_tract(const LogModel& model, const TractId& id, Sampler& rng);

}  // namespace bouquet::detail
