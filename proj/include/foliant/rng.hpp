#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "foliant/linalg.hpp"

namespace foliant {

// Deterministic sampling helper. All draws are derived from mt19937_64
// through uniform01(), so a given seed reproduces the same stream on any
// platform (no implementation-defined std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return double(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.28318530717958647692 * u2);
  }

  Vector unit_vector(std::size_t n) {
    for (;;) {
      Vector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = normal();
      double s = norm(v);
      if (s > 1e-12) return (1.0 / s) * v;
    }
  }

  Vector in_ball(std::size_t n, double radius) {
    Vector v = unit_vector(n);
    double r = radius * std::pow(uniform01(), 1.0 / double(n));
    return r * v;
  }

  Vector in_box(std::size_t n, double r) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = uniform(-r, r);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace foliant
