#pragma once

// Shared helpers for the test binaries: a fixed-seed RNG so failures
// reproduce, and log-domain closeness assertions.

#include <cmath>
#include <random>

#include "bigeo/greal.hpp"

namespace testsup {

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed1234u);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

inline int uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng());
}

// |la - lb| relative to max(1, |la|, |lb|); same convention as bigeo::g_close.
inline double rel_log_err(bigeo::GReal a, bigeo::GReal b) {
  double la = a.log_value(), lb = b.log_value();
  return std::fabs(la - lb) / std::max(1.0, std::max(std::fabs(la), std::fabs(lb)));
}

inline double rel_log_err(double la, double lb) {
  return std::fabs(la - lb) / std::max(1.0, std::max(std::fabs(la), std::fabs(lb)));
}

}  // namespace testsup
