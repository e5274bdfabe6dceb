#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "quadprop/core.hpp"
#include "quadprop/lie_core.hpp"
#include "quadprop/matrix_exp.hpp"

namespace quadprop {

/// Heisenberg-picture linear map (Q, P) = M (q, p) with M = [[A, B], [C, D]].
template <typename Scalar>
class AbcdMatrix {
 public:
  AbcdMatrix() : m_(Matrix2<Scalar>::Identity()) {}
  AbcdMatrix(Scalar a, Scalar b, Scalar c, Scalar d) { m_ << a, b, c, d; }
  explicit AbcdMatrix(const Matrix2<Scalar>& m) : m_(m) {}

  static AbcdMatrix identity() { return AbcdMatrix(); }

  Scalar a() const { return m_(0, 0); }
  Scalar b() const { return m_(0, 1); }
  Scalar c() const { return m_(1, 0); }
  Scalar d() const { return m_(1, 1); }

  const Matrix2<Scalar>& matrix() const { return m_; }

  Scalar determinant() const { return Scalar(wide_determinant()); }
  Scalar symplectic_residual() const { return Scalar(wide_determinant() - 1); }

  /// (Q, P) for an initial phase-space point (q, p).
  Vector2<Scalar> apply(Scalar q, Scalar p) const { return m_ * Vector2<Scalar>(q, p); }

 private:
  Wide<Scalar> wide_determinant() const {
    using W = Wide<Scalar>;
    return W(m_(0, 0)) * W(m_(1, 1)) - W(m_(0, 1)) * W(m_(1, 0));
  }

  Matrix2<Scalar> m_;
};

using AbcdMatrixd = AbcdMatrix<double>;

namespace symplectic_tol {
inline constexpr double kInput = 1e-8;
inline constexpr double kRepairFloor = 1e-9;
inline constexpr double kRepairCeiling = 1e-6;
}  // namespace symplectic_tol

template <typename Scalar>
AbcdMatrix<Scalar> abcd_from_generator(const QuadraticGenerator<Scalar>& g) {
  using W = Wide<Scalar>;
  const QuadraticGenerator<W> wide{W(g.alpha), W(g.beta), W(g.gamma)};
  const SU11Params<W> p = to_su11(wide);
  const W c = gc(p.delta_sq);
  const W sh = gs(p.delta_sq);
  return {Scalar(c + wide.beta * sh), Scalar(wide.alpha * sh), Scalar(-wide.gamma * sh), Scalar(c - wide.beta * sh)};
}

/// Brute-force exp of the classical flow generator [[beta, alpha], [-gamma, -beta]].
template <typename Scalar>
AbcdMatrix<Scalar> matrix_exp_oracle(const QuadraticGenerator<Scalar>& g) {
  detail::require_finite(g);
  Matrix2<Scalar> flow;
  flow << g.beta, g.alpha, -g.gamma, -g.beta;
  return AbcdMatrix<Scalar>(expm_taylor(flow, 24));
}

template <typename Scalar>
AbcdMatrix<Scalar> abcd_from_sr(const NormalOrderFactors<Scalar>& f) {
  using std::abs;
  if (!(abs(f.unitarity_residual()) <= Scalar(symplectic_tol::kInput))) {
    throw NotSymplectic("normal-order factors violate |s|^2 - |r|^2 = 1");
  }
  return {f.s.real() - f.r.real(), f.s.imag() - f.r.imag(), -f.s.imag() - f.r.imag(),
          f.s.real() + f.r.real()};
}

template <typename Scalar>
NormalOrderFactors<Scalar> sr_from_abcd(const AbcdMatrix<Scalar>& m) {
  using std::abs;
  if (!(abs(m.symplectic_residual()) <= Scalar(symplectic_tol::kInput))) {
    throw NotSymplectic("ABCD matrix violates AD - BC = 1");
  }
  NormalOrderFactors<Scalar> f;
  f.s = Complex<Scalar>((m.d() + m.a()) / 2, (m.b() - m.c()) / 2);
  f.r = Complex<Scalar>((m.d() - m.a()) / 2, -(m.b() + m.c()) / 2);
  return f;
}

/// Divides by sqrt(det) when the drift is in (1e-9, 1e-6]; throws above that.
template <typename Scalar>
AbcdMatrix<Scalar> repair_symplectic(const AbcdMatrix<Scalar>& m) {
  using std::abs;
  const Scalar drift = abs(m.symplectic_residual());
  if (!(drift <= Scalar(symplectic_tol::kRepairCeiling))) {
    throw NotSymplectic("composition drifted off the symplectic group");
  }
  if (drift <= Scalar(symplectic_tol::kRepairFloor)) return m;
  return AbcdMatrix<Scalar>(m.matrix() / std::sqrt(m.determinant()));
}

/// m2 after m1: the later step sits on the left.
template <typename Scalar>
AbcdMatrix<Scalar> compose(const AbcdMatrix<Scalar>& m2, const AbcdMatrix<Scalar>& m1) {
  return repair_symplectic(AbcdMatrix<Scalar>(m2.matrix() * m1.matrix()));
}

template <typename Scalar>
AbcdMatrix<Scalar> invert(const AbcdMatrix<Scalar>& m) {
  return {m.d(), -m.b(), -m.c(), m.a()};
}

/// Line-oriented step list: `alpha beta gamma` per line, `#` comments.
using Schedule = std::vector<QuadraticGeneratord>;

class ScheduleParseError : public std::runtime_error {
 public:
  ScheduleParseError(int line, const std::string& what)
      : std::runtime_error("schedule line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Schedule parse_schedule(std::istream& in);
Schedule load_schedule(const std::string& path);

/// Ordered product M_n ... M_2 M_1 of the per-step ABCD maps.
template <typename Scalar>
AbcdMatrix<Scalar> compose_schedule(const std::vector<QuadraticGenerator<Scalar>>& steps) {
  AbcdMatrix<Scalar> total;
  for (const auto& g : steps) total = compose(abcd_from_generator(g), total);
  return total;
}

}  // namespace quadprop
