#pragma once

#include <edifice/linalg.hpp>

#include <random>

namespace edifice {

/// Deterministic random source: every randomized sub-procedure takes one of
/// these explicitly so a fixed seed reproduces runs bit for bit.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  long int_in(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(gen_);
  }

  Rat rational(long height = 6) {
    long num = int_in(-height, height);
    long den = int_in(1, height);
    return rat(num, den);
  }

  Rat nonzero_rational(long height = 6) {
    for (;;) {
      Rat q = rational(height);
      if (q != 0) return q;
    }
  }

  Rat positive_rational(long height = 6) {
    return rat(int_in(1, height), int_in(1, height));
  }

  Scalar sqrt_scalar(unsigned long d, long height = 6) {
    return Scalar(rational(height), rational(height), d);
  }

  QVec rational_vector(size_t n, long height = 6) {
    QVec v(n);
    for (auto& x : v) x = rational(height);
    return v;
  }

  SVec sqrt_vector(size_t n, unsigned long d, long height = 6) {
    SVec v(n);
    for (auto& x : v) x = sqrt_scalar(d, height);
    return v;
  }

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace edifice
