#pragma once

#include <cmath>
#include <stdexcept>

#include "quadprop/core.hpp"
#include "quadprop/lie_core.hpp"
#include "quadprop/symplectic.hpp"

namespace quadprop {

inline constexpr double kFocalTolerance = 1e-12;

/// K(Q, q) = prefactor * exp(coef_qQ q Q + coef_qq q^2 + coef_QQ Q^2).
template <typename Scalar>
struct GaussianKernel {
  Complex<Scalar> prefactor;
  Complex<Scalar> coef_qQ;
  Complex<Scalar> coef_qq;
  Complex<Scalar> coef_QQ;

  /// Amplitude for the transition q -> Q.
  Complex<Scalar> operator()(Scalar Q, Scalar q) const {
    return prefactor * std::exp(coef_qQ * (q * Q) + coef_qq * (q * q) + coef_QQ * (Q * Q));
  }
};

/// W(q, Q) = inv_b q Q - a_over_2b q^2 - d_over_2b Q^2.
template <typename Scalar>
struct GeneratingFunctionW {
  Scalar inv_b{0};
  Scalar a_over_2b{0};
  Scalar d_over_2b{0};

  Scalar operator()(Scalar q, Scalar Q) const {
    return inv_b * q * Q - a_over_2b * q * q - d_over_2b * Q * Q;
  }
};

/// psi(x) = exp(quad x^2 + lin x + log_amp). Closed under convolution with
/// Gaussian kernels; normalizable while Re(quad) < 0.
template <typename Scalar>
struct ComplexGaussian {
  Complex<Scalar> quad;
  Complex<Scalar> lin;
  Complex<Scalar> log_amp;

  Complex<Scalar> operator()(Scalar x) const { return std::exp(quad * (x * x) + lin * x + log_amp); }

  Scalar norm() const {
    const Scalar a = -2 * quad.real();
    if (!(a > 0)) throw NonConvergent("wavepacket is not square integrable");
    const Scalar b = 2 * lin.real();
    const Scalar log_norm_sq = 2 * log_amp.real() + b * b / (4 * a) + std::log(kPi<Scalar> / a) / 2;
    return std::exp(log_norm_sq / 2);
  }

  Scalar mean_q() const { return -lin.real() / (2 * quad.real()); }

  Scalar mean_p() const { return 2 * quad.imag() * mean_q() + lin.imag(); }

  /// Spatial standard deviation of |psi|^2.
  Scalar spread_q() const { return std::sqrt(Scalar(-1) / (4 * quad.real())); }
};

template <typename Scalar>
class GaussianWavepacket {
 public:
  GaussianWavepacket(Scalar center_q, Scalar center_p, Scalar width, Scalar phase = 0)
      : center_q_(center_q), center_p_(center_p), width_(width), phase_(phase) {
    if (!(width > 0) || !std::isfinite(width)) {
      throw std::invalid_argument("wavepacket width must be positive");
    }
  }

  Scalar center_q() const { return center_q_; }
  Scalar center_p() const { return center_p_; }
  Scalar width() const { return width_; }
  Scalar phase() const { return phase_; }

  ComplexGaussian<Scalar> as_gaussian() const {
    const Scalar w2 = width_ * width_;
    ComplexGaussian<Scalar> g;
    g.quad = Complex<Scalar>(-1 / (2 * w2), 0);
    g.lin = Complex<Scalar>(center_q_ / w2, center_p_);
    g.log_amp = Complex<Scalar>(-center_q_ * center_q_ / (2 * w2) - std::log(kPi<Scalar> * w2) / 4, phase_);
    return g;
  }

  Complex<Scalar> operator()(Scalar x) const { return as_gaussian()(x); }

 private:
  Scalar center_q_, center_p_, width_, phase_;
};

using GaussianKerneld = GaussianKernel<double>;
using GeneratingFunctionWd = GeneratingFunctionW<double>;
using ComplexGaussiand = ComplexGaussian<double>;
using GaussianWavepacketd = GaussianWavepacket<double>;

template <typename Scalar>
[[noreturn]] void throw_focal(const AbcdMatrix<Scalar>& m) {
  throw FocalPoint(double(m.a()), double(m.b()), double(m.c()), double(m.d()));
}

template <typename Scalar>
GaussianKernel<Scalar> kernel_from_sr(const NormalOrderFactors<Scalar>& f) {
  const AbcdMatrix<Scalar> m = abcd_from_sr(f);  // validates unitarity
  const Complex<Scalar> denom = f.s - std::conj(f.s) - f.r + std::conj(f.r);
  if (std::abs(denom) < Scalar(kFocalTolerance)) throw_focal(m);
  const Complex<Scalar> sum_minus = f.s + std::conj(f.s) - f.r - std::conj(f.r);
  const Complex<Scalar> sum_plus = f.s + std::conj(f.s) + f.r + std::conj(f.r);
  GaussianKernel<Scalar> k;
  k.prefactor = std::sqrt(Scalar(1) / (kPi<Scalar> * denom));
  k.coef_qQ = Scalar(2) / denom;
  k.coef_qq = -sum_minus / (Scalar(2) * denom);
  k.coef_QQ = -sum_plus / (Scalar(2) * denom);
  return k;
}

template <typename Scalar>
GeneratingFunctionW<Scalar> generating_function(const AbcdMatrix<Scalar>& m) {
  using std::abs;
  if (!(abs(m.b()) >= Scalar(kFocalTolerance))) throw_focal(m);
  return {Scalar(1) / m.b(), m.a() / (2 * m.b()), m.d() / (2 * m.b())};
}

/// Inverse of generating_function; C follows from AD - BC = 1.
template <typename Scalar>
AbcdMatrix<Scalar> abcd_from_w(const GeneratingFunctionW<Scalar>& w) {
  const Scalar b = Scalar(1) / w.inv_b;
  const Scalar a = 2 * w.a_over_2b * b;
  const Scalar d = 2 * w.d_over_2b * b;
  return {a, b, (a * d - 1) / b, d};
}

/// p = dW/dq, P = -dW/dQ.
template <typename Scalar>
Vector2<Scalar> classical_map_from_w(const GeneratingFunctionW<Scalar>& w, Scalar q, Scalar Q) {
  return {Q * w.inv_b - 2 * w.a_over_2b * q, -q * w.inv_b + 2 * w.d_over_2b * Q};
}

/// <Q|U|q> = (2 pi i B)^(-1/2) exp(-i W(q, Q)), principal branch of the root.
template <typename Scalar>
GaussianKernel<Scalar> kernel_from_abcd(const AbcdMatrix<Scalar>& m) {
  const GeneratingFunctionW<Scalar> w = generating_function(m);
  const Scalar quarter = kPi<Scalar> / 4;
  const Scalar modulus = Scalar(1) / std::sqrt(2 * kPi<Scalar> * std::abs(m.b()));
  GaussianKernel<Scalar> k;
  k.prefactor = std::polar(modulus, m.b() > 0 ? -quarter : quarter);
  k.coef_qQ = Complex<Scalar>(0, -w.inv_b);
  k.coef_qq = Complex<Scalar>(0, w.a_over_2b);
  k.coef_QQ = Complex<Scalar>(0, w.d_over_2b);
  return k;
}

template <typename Scalar>
GaussianKernel<Scalar> kernel_from_generator(const QuadraticGenerator<Scalar>& g) {
  return kernel_from_abcd(abcd_from_generator(g));
}

/// Closed-form psi_out(Q) = integral of K(Q, q) psi(q) dq.
template <typename Scalar>
ComplexGaussian<Scalar> convolve(const GaussianKernel<Scalar>& k, const ComplexGaussian<Scalar>& psi) {
  const Complex<Scalar> width_term = -(psi.quad + k.coef_qq);
  if (!(width_term.real() > 0)) throw NonConvergent("kernel convolution integral does not converge");
  const Complex<Scalar> four_a = Scalar(4) * width_term;
  ComplexGaussian<Scalar> out;
  out.quad = k.coef_QQ + k.coef_qQ * k.coef_qQ / four_a;
  out.lin = Scalar(2) * k.coef_qQ * psi.lin / four_a;
  out.log_amp = psi.log_amp + psi.lin * psi.lin / four_a + std::log(k.prefactor) +
                std::log(std::sqrt(kPi<Scalar> / width_term));
  return out;
}

template <typename Scalar>
ComplexGaussian<Scalar> convolve(const GaussianKernel<Scalar>& k, const GaussianWavepacket<Scalar>& psi) {
  return convolve(k, psi.as_gaussian());
}

/// Kernel of "k1 then k2": integral of K2(Q, x) K1(x, q) dx as a Fresnel
/// integral. Constant phase is fixed by the principal root and may differ
/// from kernel_from_abcd of the composed matrix across a caustic.
template <typename Scalar>
GaussianKernel<Scalar> compose_kernels(const GaussianKernel<Scalar>& k2, const GaussianKernel<Scalar>& k1) {
  const Complex<Scalar> width_term = -(k1.coef_QQ + k2.coef_qq);
  const Scalar scale = std::abs(k1.coef_QQ) + std::abs(k2.coef_qq) + Scalar(1);
  if (std::abs(width_term) < Scalar(kFocalTolerance) * scale) {
    throw NonConvergent("composite kernel is singular (B=0)");
  }
  if (width_term.real() < -Scalar(1e-12) * scale) {
    throw NonConvergent("kernel composition integral does not converge");
  }
  const Complex<Scalar> four_a = Scalar(4) * width_term;
  GaussianKernel<Scalar> out;
  out.prefactor = k1.prefactor * k2.prefactor * std::sqrt(kPi<Scalar> / width_term);
  out.coef_qQ = Scalar(2) * k1.coef_qQ * k2.coef_qQ / four_a;
  out.coef_qq = k1.coef_qq + k1.coef_qQ * k1.coef_qQ / four_a;
  out.coef_QQ = k2.coef_QQ + k2.coef_qQ * k2.coef_qQ / four_a;
  return out;
}

enum class SystemKind { free, harmonic };

/// alpha = t/m, beta = 0, gamma = m omega^2 t (gamma = 0 for the free particle).
template <typename Scalar>
QuadraticGenerator<Scalar> named_generator(SystemKind kind, Scalar mass, Scalar omega, Scalar t) {
  if (!(mass > 0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be positive");
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
  if (kind == SystemKind::free) return {t / mass, 0, 0};
  if (!(omega >= 0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be non-negative");
  return {t / mass, 0, mass * omega * omega * t};
}

}  // namespace quadprop
