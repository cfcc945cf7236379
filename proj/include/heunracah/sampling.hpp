#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "heunracah/core.hpp"

namespace heunracah {

using Rng = std::mt19937_64;

/// Area-uniform draw from the complex annulus inner ≤ |z| ≤ outer.
inline Complex sample_annulus(Rng& rng, double inner = 0.5, double outer = 5.0) {
  std::uniform_real_distribution<double> radius_sq(inner * inner, outer * outer);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(std::sqrt(radius_sq(rng)), angle(rng));
}

/// Pole margin used by every sampler unless overridden.
inline constexpr double kPoleMargin = 1e-3;

}  // namespace heunracah
