#include "quadprop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "quadprop/coherent_iwop.hpp"
#include "quadprop/lie_core.hpp"
#include "quadprop/oracle.hpp"
#include "quadprop/propagator.hpp"
#include "quadprop/sampling.hpp"
#include "quadprop/symplectic.hpp"

namespace quadprop {

namespace {

using Rng = std::mt19937_64;

class MaxTracker {
 public:
  void add(double v) { value_ = std::max(value_, std::isnan(v) ? INFINITY : v); }
  double value() const { return value_; }

 private:
  double value_ = 0;
};

double max_abs(const Matrix2<double>& a, const Matrix2<double>& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Mixed sample: uniform in [-5, 5]^3 with every fourth generator pinned
/// near Delta^2 = 0.
QuadraticGeneratord sample_wide(Rng& rng, int index) {
  if (index % 4 == 3) return near_degenerate_generator(rng, 5.0);
  return random_generator(rng, 5.0);
}

SuiteResult lie_core_suite(Rng& rng, bool inject_fault) {
  MaxTracker unitarity, delta_consistency, seam;
  for (int i = 0; i < 10000; ++i) {
    const auto g = sample_wide(rng, i);
    const auto p = to_su11(g);
    const double delta_ref = std::norm(p.tau) - p.sigma * p.sigma / 4;
    delta_consistency.add(std::abs(p.delta_sq - delta_ref) / std::max(1.0, std::abs(delta_ref)));
    unitarity.add(std::abs(normal_order(g).unitarity_residual()));
  }
  for (int i = 0; i < 100; ++i) {
    auto p = to_su11(random_generator(rng, 2.0));
    p.delta_sq = 0;
    const auto at_zero = normal_order(p);
    for (double d : {1e-9, -1e-9}) {
      p.delta_sq = d;
      const auto f = normal_order(p);
      seam.add(std::max(std::abs(f.s - at_zero.s), std::abs(f.r - at_zero.r)));
    }
  }
  double unitarity_value = unitarity.value();
  if (inject_fault) unitarity_value += 1.0;
  return {"lie_core",
          {{"unitarity_abs_s2_minus_abs_r2", unitarity_value, 1e-10},
           {"delta_sq_consistency", delta_consistency.value(), 1e-12},
           {"seam_continuity", seam.value(), 1e-7}}};
}

SuiteResult symplectic_suite(Rng& rng) {
  MaxTracker det, oracle, dictionary, round_trip;
  for (int i = 0; i < 10000; ++i) {
    const auto g = sample_wide(rng, i);
    const auto m = abcd_from_generator(g);
    det.add(std::abs(m.symplectic_residual()));
    oracle.add(max_abs(m.matrix(), matrix_exp_oracle(g).matrix()));
    const auto f = normal_order(g);
    dictionary.add(max_abs(abcd_from_sr(f).matrix(), m.matrix()));
    const auto back = sr_from_abcd(abcd_from_sr(f));
    round_trip.add(std::max(std::abs(back.s - f.s), std::abs(back.r - f.r)));
  }
  MaxTracker chain;
  for (int c = 0; c < 5; ++c) {
    AbcdMatrixd total;
    for (int k = 0; k < 1000; ++k) {
      total = compose(abcd_from_generator(random_generator(rng, 0.05)), total);
      chain.add(std::abs(total.symplectic_residual()));
    }
  }
  return {"symplectic",
          {{"det_minus_one", det.value(), 1e-10},
           {"generator_vs_matrix_exp_oracle", oracle.value(), 1e-10},
           {"abcd_from_sr_vs_generator", dictionary.value(), 1e-10},
           {"sr_round_trip", round_trip.value(), 1e-12},
           {"composition_chain_det", chain.value(), 1e-9}}};
}

SuiteResult propagator_suite(Rng& rng) {
  std::uniform_real_distribution<double> point(-2.0, 2.0);
  MaxTracker dual, w_reconstruct, unitarity, group;
  for (int i = 0; i < 1000; ++i) {
    const auto g = random_regular_generator(rng, 2.0, 1e-2);
    const auto k_sr = kernel_from_sr(normal_order(g));
    const auto m = abcd_from_generator(g);
    const auto k_abcd = kernel_from_abcd(m);
    for (int j = 0; j < 100; ++j) {
      const double q = point(rng), Q = point(rng);
      dual.add(std::abs(k_sr(Q, q) - k_abcd(Q, q)));
    }
    w_reconstruct.add(max_abs(abcd_from_w(generating_function(m)).matrix(), m.matrix()));
  }
  std::uniform_real_distribution<double> center(-1.0, 1.0), width(0.5, 2.0);
  for (int i = 0; i < 100; ++i) {
    const auto k = kernel_from_generator(random_regular_generator(rng, 1.0, 1e-2));
    const GaussianWavepacketd psi(center(rng), center(rng), width(rng));
    unitarity.add(std::abs(convolve(k, psi).norm() - 1.0));
  }
  for (int i = 0; i < 100; ++i) {
    const auto g1 = random_regular_generator(rng, 1.0, 1e-1);
    const auto g2 = random_regular_generator(rng, 1.0, 1e-1);
    const auto m = compose(abcd_from_generator(g2), abcd_from_generator(g1));
    if (std::abs(m.b()) < 1e-1) continue;
    const auto direct = kernel_from_abcd(m);
    const auto folded = compose_kernels(kernel_from_generator(g2), kernel_from_generator(g1));
    group.add(std::abs(std::abs(direct.prefactor) - std::abs(folded.prefactor)));
    group.add(std::abs(direct.coef_qQ - folded.coef_qQ));
    group.add(std::abs(direct.coef_qq - folded.coef_qq));
    group.add(std::abs(direct.coef_QQ - folded.coef_QQ));
  }
  return {"propagator",
          {{"kernel_sr_vs_abcd", dual.value(), 1e-10},
           {"generating_function_reconstruction", w_reconstruct.value(), 1e-10},
           {"convolve_norm", unitarity.value(), 1e-10},
           {"kernel_group_property", group.value(), 1e-8}}};
}

SuiteResult iwop_suite(Rng& rng) {
  std::uniform_real_distribution<double> point(-2.0, 2.0);
  MaxTracker dual, identity_limit;
  for (int i = 0; i < 100; ++i) {
    const auto g = random_regular_generator(rng, 2.0, 1e-2);
    const double q = point(rng), Q = point(rng);
    dual.add(std::abs(kernel_via_iwop(g, q, Q) - kernel_from_sr(normal_order(g))(Q, q)));
  }
  for (int i = 0; i < 100; ++i) {
    const CoherentLabel<double> z1{{point(rng), point(rng)}};
    const CoherentLabel<double> z2{{point(rng), point(rng)}};
    const auto f = normal_order(QuadraticGeneratord{1e-14, 1e-14, -1e-14});
    const auto overlap = std::exp(z2.z * std::conj(z1.z) - std::norm(z1.z) / 2 - std::norm(z2.z) / 2);
    identity_limit.add(std::abs(sandwich(z1, z2, f) - overlap));
  }
  return {"iwop",
          {{"kernel_via_iwop_vs_kernel_from_sr", dual.value(), 1e-10},
           {"sandwich_identity_limit", identity_limit.value(), 1e-12}}};
}

SuiteResult oracle_suite(Rng& rng) {
  MaxTracker fock, commutator, norm, end_to_end;
  commutator.add(FockTruncation<double>(60).commutator_residual());
  for (int i = 0; i < 20; ++i) {
    const auto g = random_generator(rng, 0.5);
    fock.add(fock_max_difference(fock_unitary_direct(g, 60), fock_unitary_ordered(g, 60), 8));
  }
  for (const auto kind : {SystemKind::free, SystemKind::harmonic}) {
    for (const double t : {0.5, 1.0}) {
      const auto g = named_generator(kind, 1.0, 1.0, t);
      const GaussianWavepacketd psi(1.0, 0.5, 1.0);
      const Grid grid0 = Grid::sample(-40, 40, 4096, [&](double x) { return psi(x); });
      const Grid grid1 = grid_evolve({g}, grid0, 1000);
      const auto exact = convolve(kernel_from_generator(g), psi);
      norm.add(std::abs(grid1.norm() - grid0.norm()));
      end_to_end.add(l2_distance(grid1, [&](double x) { return exact(x); }));
    }
  }
  return {"oracle",
          {{"fock_commutator", commutator.value(), 1e-12},
           {"fock_direct_vs_ordered", fock.value(), 1e-6},
           {"grid_norm_drift", norm.value(), 1e-10},
           {"grid_vs_convolve_l2", end_to_end.value(), 1e-3}}};
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ResidualCheck& c) { return c.passed(); });
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json out;
  out["passed"] = passed();
  nlohmann::ordered_json suites_json = nlohmann::ordered_json::object();
  for (const auto& suite : suites) {
    nlohmann::ordered_json s;
    s["passed"] = suite.passed();
    nlohmann::ordered_json checks = nlohmann::ordered_json::object();
    for (const auto& c : suite.checks) {
      checks[c.name] = {{"max_residual", c.max_residual}, {"tolerance", c.tolerance}, {"passed", c.passed()}};
    }
    s["checks"] = checks;
    suites_json[suite.name] = s;
  }
  out["suites"] = suites_json;
  return out;
}

VerifyReport run_verification(const VerifyOptions& options) {
  Rng rng(options.seed);
  VerifyReport report;
  report.suites.push_back(lie_core_suite(rng, options.inject_fault));
  report.suites.push_back(symplectic_suite(rng));
  report.suites.push_back(propagator_suite(rng));
  report.suites.push_back(iwop_suite(rng));
  report.suites.push_back(oracle_suite(rng));
  return report;
}

}  // namespace quadprop
