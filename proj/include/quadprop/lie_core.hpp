#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "quadprop/core.hpp"

namespace quadprop {

/// Exponent of U = exp[-(i/2)(alpha p^2 + beta (qp + pq) + gamma q^2)], hbar = 1.
template <typename Scalar>
struct QuadraticGenerator {
  Scalar alpha{0};
  Scalar beta{0};
  Scalar gamma{0};

  bool is_finite() const {
    return std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma);
  }
};

/// Coefficients of U = exp(tau K+ + i sigma K0 - conj(tau) K-).
template <typename Scalar>
struct SU11Params {
  Complex<Scalar> tau;
  Scalar sigma{0};
  Scalar delta_sq{0};
};

/// U = exp(-(r/s) K+) exp(-2 K0 ln s) exp((conj(r)/s) K-).
template <typename Scalar>
struct NormalOrderFactors {
  Complex<Scalar> s{1};
  Complex<Scalar> r{0};

  Scalar unitarity_residual() const {
    using W = Wide<Scalar>;
    const W sr = s.real(), si = s.imag(), rr = r.real(), ri = r.imag();
    return Scalar(sr * sr + si * si - rr * rr - ri * ri - W(1));
  }
};

using QuadraticGeneratord = QuadraticGenerator<double>;
using SU11Paramsd = SU11Params<double>;
using NormalOrderFactorsd = NormalOrderFactors<double>;

namespace detail {

inline constexpr double kSeriesThreshold = 1e-4;

template <typename Scalar>
void require_finite(const QuadraticGenerator<Scalar>& g) {
  if (!g.is_finite()) throw std::invalid_argument("quadratic generator has non-finite coefficient");
}

}  // namespace detail

// gc(x) = cosh(sqrt x) and gs(x) = sinh(sqrt x)/sqrt x, continued as entire
// functions of x so that no square root of a negative number is ever taken.

template <typename Scalar>
Scalar gc(Scalar x) {
  using std::abs;
  if (abs(x) < Scalar(detail::kSeriesThreshold)) {
    return Scalar(1) + x * (Scalar(1) / 2 + x * (Scalar(1) / 24 + x / 720));
  }
  if (x > 0) return std::cosh(std::sqrt(x));
  return std::cos(std::sqrt(-x));
}

template <typename Scalar>
Scalar gs(Scalar x) {
  using std::abs;
  if (abs(x) < Scalar(detail::kSeriesThreshold)) {
    return Scalar(1) + x * (Scalar(1) / 6 + x * (Scalar(1) / 120 + x / 5040));
  }
  if (x > 0) {
    const Scalar root = std::sqrt(x);
    return std::sinh(root) / root;
  }
  const Scalar root = std::sqrt(-x);
  return std::sin(root) / root;
}

template <typename Scalar>
SU11Params<Scalar> to_su11(const QuadraticGenerator<Scalar>& g) {
  detail::require_finite(g);
  SU11Params<Scalar> p;
  p.tau = Complex<Scalar>(g.beta, (g.alpha - g.gamma) / 2);
  p.sigma = -g.alpha - g.gamma;
  p.delta_sq = g.beta * g.beta - g.alpha * g.gamma;
  return p;
}

/// (s, r) from SU(1,1) parameters directly; lets callers probe the
/// Delta^2 = 0 seam with (tau, sigma) held fixed.
template <typename Scalar>
NormalOrderFactors<Scalar> normal_order(const SU11Params<Scalar>& p) {
  const Scalar c = gc(p.delta_sq);
  const Scalar sh = gs(p.delta_sq);
  NormalOrderFactors<Scalar> f;
  f.s = Complex<Scalar>(c, -p.sigma / 2 * sh);
  f.r = -p.tau * sh;
  return f;
}

template <typename Scalar>
NormalOrderFactors<Scalar> normal_order(const QuadraticGenerator<Scalar>& g) {
  detail::require_finite(g);
  using W = Wide<Scalar>;
  if constexpr (std::is_same_v<W, Scalar>) {
    return normal_order(to_su11(g));
  } else {
    const auto wide = normal_order(to_su11(QuadraticGenerator<W>{W(g.alpha), W(g.beta), W(g.gamma)}));
    return {Complex<Scalar>(wide.s), Complex<Scalar>(wide.r)};
  }
}

}  // namespace quadprop
