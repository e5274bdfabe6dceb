#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadprop/oracle.hpp"

namespace quadprop {

namespace {

using cd = std::complex<double>;

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// Hermitian tridiagonal discretization of (1/2)(alpha p^2 + beta (qp+pq) + gamma q^2):
/// p^2 by the 3-point Laplacian, qp + pq = -i (X D1 + D1 X) with central D1.
struct TridiagonalHamiltonian {
  Eigen::VectorXcd diag;
  Eigen::VectorXcd upper;  // (j, j+1)
  Eigen::VectorXcd lower;  // (j+1, j)
};

TridiagonalHamiltonian discretize(const QuadraticGeneratord& g, const Grid& grid) {
  const int n = grid.n_points();
  const double dx = grid.spacing();
  TridiagonalHamiltonian h;
  h.diag.resize(n);
  h.upper.resize(n - 1);
  h.lower.resize(n - 1);
  for (int j = 0; j < n; ++j) {
    const double x = grid.x(j);
    h.diag(j) = 0.5 * (2.0 * g.alpha / (dx * dx) + g.gamma * x * x);
  }
  for (int j = 0; j + 1 < n; ++j) {
    const double x_mid_sum = grid.x(j) + grid.x(j + 1);
    h.upper(j) = 0.5 * cd(-g.alpha / (dx * dx), -g.beta * x_mid_sum / (2.0 * dx));
    h.lower(j) = std::conj(h.upper(j));
  }
  return h;
}

/// (1 + i h/2 H) psi' = (1 - i h/2 H) psi, LHS factorized once per step size.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(const TridiagonalHamiltonian& h, double dt)
      : half_(cd(0, 0.5 * dt)), h_(h) {
    const auto n = h.diag.size();
    c_prime_.resize(n);
    denom_.resize(n);
    lower_ = half_ * h.lower;
    const Eigen::VectorXcd b = Eigen::VectorXcd::Ones(n) + half_ * h.diag;
    const Eigen::VectorXcd c = half_ * h.upper;
    denom_(0) = b(0);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j > 0) denom_(j) = b(j) - lower_(j - 1) * c_prime_(j - 1);
      c_prime_(j) = j + 1 < n ? c(j) / denom_(j) : cd(0);
    }
    rhs_.resize(n);
  }

  void step(Eigen::VectorXcd& psi) {
    const auto n = psi.size();
    for (Eigen::Index j = 0; j < n; ++j) {
      cd hpsi = h_.diag(j) * psi(j);
      if (j > 0) hpsi += h_.lower(j - 1) * psi(j - 1);
      if (j + 1 < n) hpsi += h_.upper(j) * psi(j + 1);
      rhs_(j) = psi(j) - half_ * hpsi;
    }
    psi(0) = rhs_(0) / denom_(0);
    for (Eigen::Index j = 1; j < n; ++j) psi(j) = (rhs_(j) - lower_(j - 1) * psi(j - 1)) / denom_(j);
    for (Eigen::Index j = n - 2; j >= 0; --j) psi(j) -= c_prime_(j) * psi(j + 1);
  }

 private:
  cd half_;
  const TridiagonalHamiltonian& h_;
  Eigen::VectorXcd lower_;
  Eigen::VectorXcd c_prime_;
  Eigen::VectorXcd denom_;
  Eigen::VectorXcd rhs_;
};

}  // namespace

Grid::Grid(double x_min, double x_max, Eigen::VectorXcd amplitudes)
    : x_min_(x_min), x_max_(x_max), amplitudes_(std::move(amplitudes)) {
  if (!(x_max > x_min)) throw std::invalid_argument("grid needs x_max > x_min");
  if (!is_power_of_two(amplitudes_.size()) || amplitudes_.size() < 512) {
    throw std::invalid_argument("grid size must be a power of two >= 512");
  }
}

Grid Grid::sample(double x_min, double x_max, int n_points, const std::function<cd(double)>& psi) {
  Eigen::VectorXcd values(n_points);
  const double dx = (x_max - x_min) / (n_points - 1);
  for (int j = 0; j < n_points; ++j) values(j) = psi(x_min + j * dx);
  return Grid(x_min, x_max, std::move(values));
}

double Grid::norm() const { return std::sqrt(amplitudes_.squaredNorm() * spacing()); }

double Grid::edge_amplitude() const {
  const auto n = amplitudes_.size();
  return std::max({std::abs(amplitudes_(0)), std::abs(amplitudes_(1)), std::abs(amplitudes_(n - 2)),
                   std::abs(amplitudes_(n - 1))});
}

Grid grid_evolve(const Schedule& schedule, const Grid& psi0, int steps) {
  if (steps < 1) throw std::invalid_argument("grid_evolve needs steps >= 1");
  Grid psi = psi0;
  const double dt = 1.0 / steps;
  for (const auto& g : schedule) {
    detail::require_finite(g);
    if (g.alpha == 0 && g.beta == 0 && g.gamma == 0) continue;
    const TridiagonalHamiltonian h = discretize(g, psi);
    CrankNicolsonStepper stepper(h, dt);
    for (int k = 0; k < steps; ++k) {
      stepper.step(psi.amplitudes());
      if (psi.edge_amplitude() > kBoundaryLeakThreshold) {
        throw BoundaryLeak("wavefunction reached the grid boundary (edge amplitude " +
                           std::to_string(psi.edge_amplitude()) + ")");
      }
    }
  }
  return psi;
}

double l2_distance(const Grid& grid, const std::function<cd(double)>& phi) {
  double sum = 0;
  for (int j = 0; j < grid.n_points(); ++j) sum += std::norm(grid.amplitudes()(j) - phi(grid.x(j)));
  return std::sqrt(sum * grid.spacing());
}

}  // namespace quadprop
