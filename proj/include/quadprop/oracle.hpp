#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "quadprop/core.hpp"
#include "quadprop/lie_core.hpp"
#include "quadprop/matrix_exp.hpp"
#include "quadprop/propagator.hpp"
#include "quadprop/symplectic.hpp"

namespace quadprop {

// ---------------------------------------------------------------------------
// Truncated Fock space
// ---------------------------------------------------------------------------

/// a, a^dagger and the squeeze generators K+, K0, K- on the lowest `dim`
/// number states, <m|a|n> = sqrt(n) delta_{m, n-1}.
template <typename Scalar>
class FockTruncation {
 public:
  using Matrix = MatrixXc<Scalar>;

  explicit FockTruncation(int dim = 60) : dim_(dim) {
    if (dim < 16) throw std::invalid_argument("Fock truncation needs dim >= 16");
    a_ = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a_(n - 1, n) = std::sqrt(Scalar(n));
    adag_ = a_.adjoint();
  }

  int dim() const { return dim_; }
  const Matrix& a() const { return a_; }
  const Matrix& adag() const { return adag_; }

  Matrix k_plus() const { return adag_ * adag_ / Scalar(2); }
  Matrix k_minus() const { return a_ * a_ / Scalar(2); }
  Matrix k_zero() const {
    return adag_ * a_ / Scalar(2) + Matrix::Identity(dim_, dim_) / Scalar(4);
  }

  /// max |[a, a^dagger] - 1| over the levels unaffected by the cut.
  Scalar commutator_residual() const {
    const Matrix comm = a_ * adag_ - adag_ * a_;
    const int kept = dim_ - 1;
    return (comm.topLeftCorner(kept, kept) - Matrix::Identity(kept, kept)).cwiseAbs().maxCoeff();
  }

 private:
  int dim_;
  Matrix a_;
  Matrix adag_;
};

namespace detail {

template <typename Scalar>
void require_small(const QuadraticGenerator<Scalar>& g) {
  using std::abs;
  require_finite(g);
  if (abs(g.alpha) > 1 || abs(g.beta) > 1 || abs(g.gamma) > 1) {
    throw std::invalid_argument("Fock oracle requires |alpha|, |beta|, |gamma| <= 1");
  }
}

/// exp of a nilpotent matrix: the series terminates after dim terms.
template <typename Scalar>
MatrixXc<Scalar> exp_nilpotent(const MatrixXc<Scalar>& x) {
  const auto n = x.rows();
  MatrixXc<Scalar> result = MatrixXc<Scalar>::Identity(n, n);
  MatrixXc<Scalar> term = result;
  for (Eigen::Index k = 1; k < n; ++k) {
    term = (term * x) / Scalar(k);
    if (term.cwiseAbs().maxCoeff() == Scalar(0)) break;
    result += term;
  }
  return result;
}

}  // namespace detail

/// exp(tau K+ + i sigma K0 - conj(tau) K-) as a single truncated exponential.
template <typename Scalar>
MatrixXc<Scalar> fock_unitary_direct(const QuadraticGenerator<Scalar>& g, int dim = 60) {
  detail::require_small(g);
  const FockTruncation<Scalar> fock(dim);
  const SU11Params<Scalar> p = to_su11(g);
  const Complex<Scalar> i(0, 1);
  const MatrixXc<Scalar> generator =
      p.tau * fock.k_plus() + (i * p.sigma) * fock.k_zero() - std::conj(p.tau) * fock.k_minus();
  return expm_taylor(generator, 30);
}

/// exp(-(r/s) K+) exp(-2 K0 ln s) exp((conj r / s) K-) with (s, r) from normal_order.
template <typename Scalar>
MatrixXc<Scalar> fock_unitary_ordered(const QuadraticGenerator<Scalar>& g, int dim = 60) {
  detail::require_small(g);
  const FockTruncation<Scalar> fock(dim);
  const NormalOrderFactors<Scalar> f = normal_order(g);
  const Complex<Scalar> log_s = std::log(f.s);

  MatrixXc<Scalar> middle = MatrixXc<Scalar>::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) middle(n, n) = std::exp(-(Scalar(n) + Scalar(0.5)) * log_s);

  const MatrixXc<Scalar> left = detail::exp_nilpotent<Scalar>((-f.r / f.s) * fock.k_plus());
  const MatrixXc<Scalar> right = detail::exp_nilpotent<Scalar>((std::conj(f.r) / f.s) * fock.k_minus());
  return left * middle * right;
}

/// max |U1(m, n) - U2(m, n)| over m, n <= max_level.
template <typename Scalar>
Scalar fock_max_difference(const MatrixXc<Scalar>& u1, const MatrixXc<Scalar>& u2, int max_level = 8) {
  const int k = max_level + 1;
  return (u1.topLeftCorner(k, k) - u2.topLeftCorner(k, k)).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Position grid and Crank-Nicolson evolution
// ---------------------------------------------------------------------------

/// Uniform grid x_j = x_min + j dx, j = 0..n-1, including both endpoints,
/// with Dirichlet walls just outside.
class Grid {
 public:
  Grid(double x_min, double x_max, Eigen::VectorXcd amplitudes);

  static Grid sample(double x_min, double x_max, int n_points,
                     const std::function<std::complex<double>(double)>& psi);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int n_points() const { return static_cast<int>(amplitudes_.size()); }
  double spacing() const { return (x_max_ - x_min_) / (n_points() - 1); }
  double x(int j) const { return x_min_ + j * spacing(); }

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() { return amplitudes_; }

  double norm() const;
  double edge_amplitude() const;

 private:
  double x_min_;
  double x_max_;
  Eigen::VectorXcd amplitudes_;
};

inline constexpr double kBoundaryLeakThreshold = 1e-6;

/// Applies each schedule entry as `steps` Crank-Nicolson sub-steps of
/// i d psi / d tau = (1/2)(alpha p^2 + beta (qp + pq) + gamma q^2) psi over a
/// unit parameter interval. Throws BoundaryLeak when the edge amplitude
/// exceeds 1e-6.
Grid grid_evolve(const Schedule& schedule, const Grid& psi0, int steps);

/// sqrt(sum_j |psi_j - phi(x_j)|^2 dx).
double l2_distance(const Grid& grid, const std::function<std::complex<double>(double)>& phi);

}  // namespace quadprop
