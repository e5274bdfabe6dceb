#pragma once

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "quadprop/core.hpp"
#include "quadprop/lie_core.hpp"
#include "quadprop/propagator.hpp"
#include "quadprop/symplectic.hpp"

namespace quadprop {

/// Label z of the coherent state a|z> = z|z>, normalized.
template <typename Scalar>
struct CoherentLabel {
  Complex<Scalar> z;
};

/// Integral over R^4 of exp(-x^T M x / 2 + J^T x + constant). M is complex
/// symmetric; only its real part needs to be positive definite.
template <typename Scalar>
struct QuadraticFormIntegral {
  Matrix4c<Scalar> matrix = Matrix4c<Scalar>::Zero();
  Vector4c<Scalar> linear = Vector4c<Scalar>::Zero();
  Complex<Scalar> constant{0};

  /// Adds coeff * (u.x)(v.x) to the exponent.
  void add_product(Complex<Scalar> coeff, const Vector4c<Scalar>& u, const Vector4c<Scalar>& v) {
    matrix -= coeff * (u * v.transpose() + v * u.transpose());
  }

  void add_linear(Complex<Scalar> coeff, const Vector4c<Scalar>& u) { linear += coeff * u; }
};

/// How d^2z is normalized in the resolution of identity.
enum class CompletenessMeasure {
  over_pi,        // int d^2z / pi |z><z| = 1
  over_two_pi_i,  // the literal 1/(2 pi i) normalization; off by (2i)^2
};

/// <z|x>.
template <typename Scalar>
Complex<Scalar> overlap_position(const CoherentLabel<Scalar>& label, Scalar x) {
  const Complex<Scalar> zc = std::conj(label.z);
  const Scalar sqrt2 = std::sqrt(Scalar(2));
  const Complex<Scalar> expo = -x * x / 2 + sqrt2 * x * zc - zc * zc / Scalar(2) - std::norm(label.z) / 2;
  return std::exp(expo) / std::pow(kPi<Scalar>, Scalar(0.25));
}

/// <z1|U|z2> for U in normal-ordered form.
template <typename Scalar>
Complex<Scalar> sandwich(const CoherentLabel<Scalar>& z1, const CoherentLabel<Scalar>& z2,
                         const NormalOrderFactors<Scalar>& f) {
  using std::abs;
  if (!(abs(f.unitarity_residual()) <= Scalar(symplectic_tol::kInput))) {
    throw NotSymplectic("normal-order factors violate |s|^2 - |r|^2 = 1");
  }
  const Complex<Scalar> z1c = std::conj(z1.z);
  const Complex<Scalar> expo = -f.r / (Scalar(2) * f.s) * z1c * z1c + z2.z * z1c / f.s +
                               std::conj(f.r) / (Scalar(2) * f.s) * z2.z * z2.z - std::norm(z1.z) / 2 -
                               std::norm(z2.z) / 2;
  return std::exp(expo) / std::sqrt(f.s);
}

/// (2 pi)^2 / sqrt(det M) exp(J^T M^-1 J / 2 + constant).
///
/// sqrt(det M) is the product of the principal roots of the elimination
/// pivots. Each pivot has positive real part when Re(M) is positive definite,
/// so this follows the branch continuous from real M.
template <typename Scalar>
Complex<Scalar> gaussian_integral(const QuadraticFormIntegral<Scalar>& form) {
  const Matrix4c<Scalar> m = (form.matrix + form.matrix.transpose()) / Scalar(2);
  const Eigen::Matrix<Scalar, 4, 4> re = m.real();
  Eigen::LLT<Eigen::Matrix<Scalar, 4, 4>> chol(re);
  if (chol.info() != Eigen::Success) {
    throw NonConvergent("Gaussian integral: real part of quadratic form is not positive definite");
  }

  Matrix4c<Scalar> work = m;
  Complex<Scalar> sqrt_det{1};
  for (int k = 0; k < 4; ++k) {
    const Complex<Scalar> pivot = work(k, k);
    sqrt_det *= std::sqrt(pivot);
    for (int i = k + 1; i < 4; ++i) {
      const Complex<Scalar> factor = work(i, k) / pivot;
      work.row(i).tail(4 - k) -= factor * work.row(k).tail(4 - k);
    }
  }

  const Vector4c<Scalar> solved = m.partialPivLu().solve(form.linear);
  const Complex<Scalar> quad = form.linear.cwiseProduct(solved).sum();
  const Scalar two_pi = 2 * kPi<Scalar>;
  return two_pi * two_pi / sqrt_det * std::exp(quad / Scalar(2) + form.constant);
}

/// <Q|U|q> by inserting two coherent-state resolutions of identity and
/// integrating over (Re z1, Im z1, Re z2, Im z2) in closed form.
template <typename Scalar>
Complex<Scalar> kernel_via_iwop(const QuadraticGenerator<Scalar>& g, Scalar q, Scalar Q,
                                CompletenessMeasure measure = CompletenessMeasure::over_pi) {
  using C = Complex<Scalar>;
  const NormalOrderFactors<Scalar> f = normal_order(g);
  const AbcdMatrix<Scalar> m = abcd_from_sr(f);
  using std::abs;
  if (!(abs(m.b()) >= Scalar(kFocalTolerance))) throw_focal(m);

  const C i(0, 1);
  const Vector4c<Scalar> z1(1, i, 0, 0);
  const Vector4c<Scalar> z1c(1, -i, 0, 0);
  const Vector4c<Scalar> z2(0, 0, 1, i);
  const Vector4c<Scalar> z2c(0, 0, 1, -i);
  const Scalar sqrt2 = std::sqrt(Scalar(2));

  QuadraticFormIntegral<Scalar> form;
  // <Q|z1>
  form.add_linear(sqrt2 * Q, z1);
  form.add_product(C(-0.5), z1, z1);
  form.add_product(C(-0.5), z1, z1c);
  // <z1|U|z2>
  form.add_product(-f.r / (Scalar(2) * f.s), z1c, z1c);
  form.add_product(Scalar(1) / f.s, z2, z1c);
  form.add_product(std::conj(f.r) / (Scalar(2) * f.s), z2, z2);
  form.add_product(C(-0.5), z1, z1c);
  form.add_product(C(-0.5), z2, z2c);
  // <z2|q>
  form.add_linear(sqrt2 * q, z2c);
  form.add_product(C(-0.5), z2c, z2c);
  form.add_product(C(-0.5), z2, z2c);
  form.constant = C(-(q * q + Q * Q) / 2);

  const Scalar pi = kPi<Scalar>;
  const C overlap_norms(Scalar(1) / std::sqrt(pi));
  const C measure_norm = measure == CompletenessMeasure::over_pi ? C(1 / (pi * pi))
                                                                 : Scalar(1) / ((2 * pi * i) * (2 * pi * i));
  return measure_norm * overlap_norms / std::sqrt(f.s) * gaussian_integral(form);
}

}  // namespace quadprop
