#pragma once

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>

#include "skein/scalars.hpp"

namespace skein::test {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uni(double lo = 0, double hi = 1) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  cplx disk(double r) { return std::polar(r * std::sqrt(uni()), 2 * std::numbers::pi * uni()); }
  cplx annulus(double lo, double hi) {
    return std::polar(std::exp(uni(std::log(lo), std::log(hi))), 2 * std::numbers::pi * uni());
  }
  cplx gauss() {
    std::normal_distribution<double> g(0, 1);
    return {g(gen), g(gen)};
  }
};

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace skein::test
