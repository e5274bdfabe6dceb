#pragma once

#include <cmath>
#include <random>

#include "quadprop/lie_core.hpp"
#include "quadprop/symplectic.hpp"

namespace quadprop {

/// Components uniform in [-range, range].
template <typename Scalar, typename Rng>
QuadraticGenerator<Scalar> random_generator(Rng& rng, Scalar range) {
  std::uniform_real_distribution<Scalar> u(-range, range);
  return {u(rng), u(rng), u(rng)};
}

/// A generator in [-range, range]^3 with |beta^2 - alpha gamma| < max_delta_sq,
/// obtained by solving for gamma and rejecting out-of-box solutions.
template <typename Scalar, typename Rng>
QuadraticGenerator<Scalar> near_degenerate_generator(Rng& rng, Scalar range, Scalar max_delta_sq = 1e-6) {
  std::uniform_real_distribution<Scalar> u(-range, range);
  std::uniform_real_distribution<Scalar> eps(-max_delta_sq / 10, max_delta_sq / 10);
  for (;;) {
    const Scalar alpha = u(rng);
    const Scalar beta = u(rng);
    if (std::abs(alpha) < Scalar(1e-3)) continue;
    const Scalar gamma = (beta * beta - eps(rng)) / alpha;
    if (std::abs(gamma) > range) continue;
    QuadraticGenerator<Scalar> g{alpha, beta, gamma};
    if (std::abs(to_su11(g).delta_sq) < max_delta_sq) return g;
  }
}

/// Random generator whose ABCD map has |B| > min_b.
template <typename Scalar, typename Rng>
QuadraticGenerator<Scalar> random_regular_generator(Rng& rng, Scalar range, Scalar min_b) {
  for (;;) {
    const QuadraticGenerator<Scalar> g = random_generator(rng, range);
    if (std::abs(abcd_from_generator(g).b()) > min_b) return g;
  }
}

}  // namespace quadprop
