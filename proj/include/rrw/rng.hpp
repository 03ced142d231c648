#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rrw/errors.hpp"

namespace rrw {

// Splitmix64 generator with an explicit splitting rule so that every
// replicate / subsystem gets an independent stream derived from one root
// seed:
//
//   child(k) = rng64(mix(mix(origin) ^ (k+1) * 0xD1B54A32D192ED03))
//
// Splits depend only on the origin seed, never on how many draws the parent
// has consumed.  All sampling goes through next_u64, so runs are reproducible
// across platforms up to libm differences in the gamma/normal path.
class rng64 {
 public:
  explicit rng64(std::uint64_t seed) : origin_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 random bits
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  rng64 split(std::uint64_t stream) const {
    std::uint64_t z = mix(origin_);
    z = mix(z ^ (stream + 1) * 0xD1B54A32D192ED03ull);
    return rng64(z);
  }

  std::uint64_t origin() const { return origin_; }

  double next_normal() {
    // Box-Muller; one draw per call keeps the stream layout simple
    double u1 = next_unit(), u2 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Marsaglia-Tsang; shape > 0, unit scale
  double next_gamma(double shape) {
    if (!(shape > 0.0)) throw input_error("gamma shape must be positive");
    if (shape < 1.0) {
      double g = next_gamma(shape + 1.0);
      double u = next_unit();
      while (u <= 0.0) u = next_unit();
      return g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = next_normal();
      double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      double v = t * t * t;
      double u = next_unit();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Dirichlet via normalized gammas; a singleton cell is deterministically 1
  // and consumes no randomness.
  std::vector<double> next_dirichlet(const std::vector<double>& conc) {
    std::vector<double> out(conc.size());
    if (conc.size() == 1) {
      out[0] = 1.0;
      return out;
    }
    double total = 0.0;
    for (std::size_t k = 0; k < conc.size(); ++k) {
      out[k] = next_gamma(conc[k]);
      total += out[k];
    }
    if (!(total > 0.0)) throw numeric_error("dirichlet draw degenerated to zero mass");
    for (double& v : out) v /= total;
    return out;
  }

  // index sampled proportionally to non-negative weights
  std::size_t next_index(const std::vector<double>& w) {
    double total = 0.0;
    for (double x : w) {
      if (!(x >= 0.0)) throw numeric_error("negative sampling weight");
      total += x;
    }
    if (!(total > 0.0)) throw numeric_error("all sampling weights are zero");
    double u = next_unit() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      acc += w[k];
      if (u < acc) return k;
    }
    return w.empty() ? 0 : w.size() - 1;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t origin_;
  std::uint64_t state_;
};

}  // namespace rrw
