#pragma once

#include <cmath>

#include <Eigen/Core>

namespace quadprop {

/// exp(M) by scaling and squaring: M / 2^k is brought under unit-half
/// infinity norm, summed with a truncated Taylor series of `terms` terms,
/// then squared k times.
template <typename Derived>
typename Derived::PlainObject expm_taylor(const Eigen::MatrixBase<Derived>& m, int terms = 24) {
  using Plain = typename Derived::PlainObject;
  using std::abs;
  using std::ceil;
  using std::log2;
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

  const Real norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > Real(0.5)) squarings = static_cast<int>(ceil(log2(norm / Real(0.5))));
  const Plain scaled = m / std::ldexp(Real(1), squarings);

  Plain result = Plain::Identity(m.rows(), m.cols());
  Plain term = Plain::Identity(m.rows(), m.cols());
  for (int k = 1; k <= terms; ++k) {
    term = (term * scaled) / Real(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = (result * result).eval();
  return result;
}

}  // namespace quadprop
