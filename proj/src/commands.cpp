#include "quadprop/commands.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "quadprop/coherent_iwop.hpp"
#include "quadprop/oracle.hpp"
#include "quadprop/propagator.hpp"
#include "quadprop/symplectic.hpp"

namespace quadprop::cli {

namespace {

using Field = std::pair<std::string, std::string>;

void write_record(const std::vector<Field>& fields, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
    out << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].second;
    out << '\n';
    return;
  }
  out << "{\n";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string& v = fields[i].second;
    out << "  \"" << fields[i].first << "\": " << (v.empty() ? "null" : v) << (i + 1 < fields.size() ? "," : "")
        << '\n';
  }
  out << "}\n";
}

std::vector<Field> factor_fields(const NormalOrderFactorsd& f) {
  return {{"s_re", format_real(f.s.real())},
          {"s_im", format_real(f.s.imag())},
          {"r_re", format_real(f.r.real())},
          {"r_im", format_real(f.r.imag())}};
}

std::vector<Field> matrix_fields(const AbcdMatrixd& m) {
  return {{"A", format_real(m.a())}, {"B", format_real(m.b())}, {"C", format_real(m.c())}, {"D", format_real(m.d())}};
}

void append(std::vector<Field>& to, const std::vector<Field>& from) { to.insert(to.end(), from.begin(), from.end()); }

}  // namespace

std::string format_real(double value) {
  if (value == 0) value = 0;  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", value);
  return buf;
}

int cmd_decompose(const QuadraticGeneratord& g, OutputFormat format, std::ostream& out) {
  const SU11Paramsd p = to_su11(g);
  const NormalOrderFactorsd f = normal_order(g);
  const AbcdMatrixd m = abcd_from_generator(g);
  std::vector<Field> fields = {{"tau_re", format_real(p.tau.real())},
                               {"tau_im", format_real(p.tau.imag())},
                               {"sigma", format_real(p.sigma)},
                               {"delta_sq", format_real(p.delta_sq)}};
  append(fields, factor_fields(f));
  append(fields, matrix_fields(m));
  fields.push_back({"unitarity_residual", format_real(f.unitarity_residual())});
  fields.push_back({"symplectic_residual", format_real(m.symplectic_residual())});
  write_record(fields, format, out);
  return kOk;
}

int cmd_kernel(const QuadraticGeneratord& g, double q, double Q, bool check, std::ostream& out,
               std::ostream& err) {
  try {
    const auto value = kernel_from_generator(g)(Q, q);
    out << format_real(value.real()) << ' ' << format_real(value.imag()) << '\n';
    if (check) {
      const auto iwop = kernel_via_iwop(g, q, Q);
      out << "iwop " << format_real(iwop.real()) << ' ' << format_real(iwop.imag()) << '\n';
      out << "diff " << format_real(std::abs(iwop - value)) << '\n';
    }
  } catch (const FocalPoint& e) {
    err << e.what() << '\n';
    return kFocalPoint;
  } catch (const NonConvergent& e) {
    err << e.what() << '\n';
    return kFocalPoint;
  }
  return kOk;
}

int cmd_evolve(const EvolveConfig& config, std::ostream& out, std::ostream& err) {
  Schedule schedule;
  try {
    schedule = load_schedule(config.schedule_path);
  } catch (const ScheduleParseError& e) {
    err << e.what() << '\n';
    return kParseError;
  }
  if (config.stride < 1) {
    err << "stride must be >= 1\n";
    return kParseError;
  }

  try {
    const GaussianWavepacketd packet(config.center_q, config.center_p, config.width, config.phase);
    ComplexGaussiand evolved = packet.as_gaussian();
    if (!schedule.empty()) evolved = convolve(kernel_from_abcd(compose_schedule(schedule)), packet);

    const Grid start = Grid::sample(config.x_min, config.x_max, config.points, [&](double x) { return packet(x); });
    const Grid finish = grid_evolve(schedule, start, config.steps);

    out << "x,re_kernel_route,im_kernel_route,re_grid_route,im_grid_route,abs_diff\n";
    for (int j = 0; j < finish.n_points(); j += config.stride) {
      const double x = finish.x(j);
      const auto kernel_value = evolved(x);
      const auto grid_value = finish.amplitudes()(j);
      out << format_real(x) << ',' << format_real(kernel_value.real()) << ',' << format_real(kernel_value.imag())
          << ',' << format_real(grid_value.real()) << ',' << format_real(grid_value.imag()) << ','
          << format_real(std::abs(kernel_value - grid_value)) << '\n';
    }
    out << "# l2_diff," << format_real(l2_distance(finish, [&](double x) { return evolved(x); })) << '\n';
  } catch (const FocalPoint& e) {
    err << e.what() << '\n';
    return kFocalPoint;
  } catch (const NonConvergent& e) {
    err << e.what() << '\n';
    return kFocalPoint;
  } catch (const BoundaryLeak& e) {
    err << e.what() << '\n';
    return kBoundaryLeak;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kParseError;
  }
  return kOk;
}

int cmd_compose(const std::string& schedule_path, OutputFormat format, std::ostream& out, std::ostream& err) {
  Schedule schedule;
  try {
    schedule = load_schedule(schedule_path);
  } catch (const ScheduleParseError& e) {
    err << e.what() << '\n';
    return kParseError;
  }
  AbcdMatrixd m;
  try {
    m = compose_schedule(schedule);
  } catch (const NotSymplectic& e) {
    err << e.what() << '\n';
    return kParseError;
  }
  std::vector<Field> fields = {{"steps", std::to_string(schedule.size())}};
  append(fields, matrix_fields(m));
  append(fields, factor_fields(sr_from_abcd(m)));
  fields.push_back({"symplectic_residual", format_real(m.symplectic_residual())});
  const bool focal = std::abs(m.b()) < kFocalTolerance;
  fields.push_back({"focal_point", focal ? "true" : "false"});
  if (focal) {
    fields.push_back({"w_inv_b", ""});
    fields.push_back({"w_a_over_2b", ""});
    fields.push_back({"w_d_over_2b", ""});
  } else {
    const auto w = generating_function(m);
    fields.push_back({"w_inv_b", format_real(w.inv_b)});
    fields.push_back({"w_a_over_2b", format_real(w.a_over_2b)});
    fields.push_back({"w_d_over_2b", format_real(w.d_over_2b)});
  }
  write_record(fields, format, out);
  return kOk;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  const VerifyReport report = run_verification(options);
  out << report.to_json().dump(2) << '\n';
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace quadprop::cli
