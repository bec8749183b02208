#pragma once

// Hand-rolled generators for property tests. Seeds are fixed so failures
// reproduce; each test draws from its own stream.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pgt/chamber.hpp"

namespace testing_support {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  // d eigenvalues with distinct moduli, random signs, |prod| = 1.
  std::vector<double> eigenvalues(int d) {
    std::vector<double> logs(d);
    double sum = 0.0;
    for (auto& l : logs) {
      l = uniform(-3.0, 3.0);
      sum += l;
    }
    for (auto& l : logs) l -= sum / d;
    std::vector<double> out(d);
    for (int i = 0; i < d; ++i) out[i] = (coin() ? 1.0 : -1.0) * std::exp(logs[i]);
    return out;
  }

  // det_factor in (0, 1), occasionally very close to 1.
  double det_factor() {
    const double u = uniform(0.0, 1.0);
    if (coin(0.2)) return 1.0 - std::ldexp(u + 0.01, -integer(2, 30));
    return std::max(1e-6, u);
  }

  std::vector<pgt::GeodesicClass> classes(std::size_t rank, int max_count, double max_length = 8.0) {
    std::vector<pgt::GeodesicClass> out(static_cast<std::size_t>(integer(0, max_count)));
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto& c = out[i];
      c.lengths.resize(rank);
      for (auto& l : c.lengths) l = coin(0.1) ? std::round(uniform(1.0, max_length)) : uniform(0.01, max_length);
      c.flat_volume = uniform(0.05, 5.0);
      c.det_factor = det_factor();
      c.label = "c" + std::to_string(i);
    }
    return out;
  }

  pgt::Spectrum spectrum(std::size_t rank, int max_count, double max_length = 8.0) {
    return pgt::Spectrum(pgt::ChamberBasis(rank), classes(rank, max_count, max_length),
                         pgt::Provenance::kSynthetic);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing_support
