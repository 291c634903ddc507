#pragma once

#include <cstdint>
#include <random>

#include "octodpw/octonion.hpp"

namespace octodpw {

/// Seeded sampler with components uniform in [−1, 1].
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  Quaternion quaternion() { return {uniform(), uniform(), uniform(), uniform()}; }
  Quaternion unit_quaternion() {
    Quaternion q;
    do q = quaternion();
    while (abs(q) < 1e-3);
    return normalized(q);
  }
  Quaternion pure_quaternion() { return {0, uniform(), uniform(), uniform()}; }
  Octonion octonion() { return {quaternion(), quaternion()}; }
  Octonion unit_octonion() {
    Octonion q;
    do q = octonion();
    while (abs(q) < 1e-3);
    return normalized(q);
  }
  Octonion unit_pure_octonion() {
    Octonion q;
    do q = imag_part(octonion());
    while (abs(q) < 1e-3);
    return normalized(q);
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace octodpw
