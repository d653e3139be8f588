#pragma once

#include <cstdint>
#include <random>

#include "quat.hpp"

namespace qmoment {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return v ^ (v >> 31);
}

// Per-sample seed from (master seed, stream tag, sample index). Counter-based,
// so a sample's stream never depends on which thread evaluates it.
constexpr std::uint64_t sample_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return mix64(mix64(master ^ mix64(stream)) + index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }

  Quaternion gaussian_quaternion() {
    const double w = normal();
    const double x = normal();
    const double y = normal();
    const double z = normal();
    return {w, x, y, z};
  }

  QuatMatrix gaussian_matrix(std::size_t rows, std::size_t cols) {
    QuatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = gaussian_quaternion();
    return m;
  }

  Quaternion unit_quaternion() {
    Quaternion q = gaussian_quaternion();
    return q / q.norm();
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace qmoment
