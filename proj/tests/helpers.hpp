#pragma once

#include <random>

#include "hyperwave/mat3.hpp"

namespace testutil {

/// Uniform values in [-s, s] from a fixed-seed engine.
inline double uniform(std::mt19937_64& gen, double s) {
  return s * (2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0);
}

inline hyperwave::Mat3 random_mat3(std::mt19937_64& gen, double scale) {
  hyperwave::Mat3 m;
  for (double& v : m.a) v = uniform(gen, scale);
  return m;
}

/// Random Y with det(Y + I) safely positive.
inline hyperwave::Mat3 random_admissible_state(std::mt19937_64& gen, double scale = 0.15) {
  for (;;) {
    hyperwave::Mat3 y = random_mat3(gen, scale);
    if ((y + hyperwave::Mat3::identity()).det() > 0.3) return y;
  }
}

} // namespace testutil
