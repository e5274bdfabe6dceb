#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Core>

namespace quadprop {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Matrix4c = Eigen::Matrix<Complex<Scalar>, 4, 4>;

template <typename Scalar>
using Vector4c = Eigen::Matrix<Complex<Scalar>, 4, 1>;

template <typename Scalar>
using MatrixXc = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorXc = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

/// Accumulation type: long double for float and double, Scalar otherwise.
/// Entries near cosh(sqrt 50) lose ~1e-10 absolute to double rounding in
/// intermediate products, so the closed forms are evaluated one step wider.
template <typename Scalar>
using Wide = std::conditional_t<(sizeof(Scalar) < sizeof(long double)), long double, Scalar>;

template <typename Scalar>
inline constexpr Scalar kPi = Scalar(3.141592653589793238462643383279502884L);

/// Kernel requested where B = 0 (ωt = nπ, pure squeeze, ...). The Gaussian
/// form degenerates to a delta function there.
class FocalPoint : public std::runtime_error {
 public:
  FocalPoint(double a, double b, double c, double d)
      : std::runtime_error("focal point: B=0"), a_(a), b_(b), c_(c), d_(d) {}

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

 private:
  double a_, b_, c_, d_;
};

/// A Gaussian integral whose quadratic form lacks a positive-definite real part.
class NonConvergent : public std::runtime_error {
 public:
  explicit NonConvergent(const std::string& what) : std::runtime_error(what) {}
};

/// Grid wavefunction reached the edge of the box.
class BoundaryLeak : public std::runtime_error {
 public:
  explicit BoundaryLeak(const std::string& what) : std::runtime_error(what) {}
};

/// Input violates |s|^2 - |r|^2 = 1 or AD - BC = 1 beyond tolerance.
class NotSymplectic : public std::invalid_argument {
 public:
  explicit NotSymplectic(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace quadprop
