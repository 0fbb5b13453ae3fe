#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "mczeta/types.hpp"

namespace mczeta::test {

inline double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Fixed-seed draws so failures reproduce.
struct Draw {
  std::mt19937_64 gen;
  explicit Draw(unsigned long seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  Complex complex(double lo, double hi, double im) { return {uniform(lo, hi), uniform(-im, im)}; }
};

}  // namespace mczeta::test
