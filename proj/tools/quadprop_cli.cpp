#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "quadprop/commands.hpp"

#ifndef QUADPROP_INJECT_FAULT
#define QUADPROP_INJECT_FAULT 0
#endif

using namespace quadprop;

namespace {

void add_generator_args(CLI::App* cmd, QuadraticGeneratord& g) {
  cmd->add_option("alpha", g.alpha, "coefficient of p^2")->required();
  cmd->add_option("beta", g.beta, "coefficient of qp + pq")->required();
  cmd->add_option("gamma", g.gamma, "coefficient of q^2")->required();
}

void add_format_option(CLI::App* cmd, cli::OutputFormat& format) {
  const std::map<std::string, cli::OutputFormat> names{{"csv", cli::OutputFormat::csv},
                                                       {"json", cli::OutputFormat::json}};
  cmd->add_option("--format", format, "output format (csv or json)")
      ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian propagators of quadratic Hamiltonians via SU(1,1) normal ordering"};
  app.require_subcommand(1);

  std::string output_path;
  app.add_option("-o,--output", output_path, "write results to this file instead of stdout");

  QuadraticGeneratord g;
  cli::OutputFormat format = cli::OutputFormat::csv;

  auto* decompose = app.add_subcommand("decompose", "tau, sigma, Delta^2, (s, r), ABCD and residuals");
  add_generator_args(decompose, g);
  add_format_option(decompose, format);

  double q = 0, Q = 0;
  bool check = false;
  auto* kernel = app.add_subcommand("kernel", "evaluate <Q|U|q> via the ABCD route");
  add_generator_args(kernel, g);
  kernel->add_option("q", q, "initial position")->required();
  kernel->add_option("Q", Q, "final position")->required();
  kernel->add_flag("--check", check, "recompute via coherent-state integration and print the difference");

  cli::EvolveConfig evolve_config;
  auto* evolve = app.add_subcommand("evolve", "evolve a Gaussian packet through a step schedule, kernel vs grid");
  evolve->add_option("schedule", evolve_config.schedule_path, "step schedule file")->required();
  evolve->add_option("--q0", evolve_config.center_q, "packet center in q");
  evolve->add_option("--p0", evolve_config.center_p, "packet center in p");
  evolve->add_option("--width", evolve_config.width, "packet width");
  evolve->add_option("--phase", evolve_config.phase, "global phase");
  evolve->add_option("--xmin", evolve_config.x_min, "grid lower edge");
  evolve->add_option("--xmax", evolve_config.x_max, "grid upper edge");
  evolve->add_option("--points", evolve_config.points, "grid points (power of two >= 512)");
  evolve->add_option("--steps", evolve_config.steps, "Crank-Nicolson sub-steps per schedule entry");
  evolve->add_option("--stride", evolve_config.stride, "emit every n-th grid point");

  std::string compose_path;
  auto* compose = app.add_subcommand("compose", "compose a step schedule into one ABCD map");
  compose->add_option("schedule", compose_path, "step schedule file")->required();
  add_format_option(compose, format);

  VerifyOptions verify_options;
  verify_options.inject_fault = QUADPROP_INJECT_FAULT != 0;
  auto* verify = app.add_subcommand("verify", "run every invariant suite and print a JSON summary");
  verify->add_option("--seed", verify_options.seed, "random seed for sampled invariants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kParseError;
  }

  std::unique_ptr<std::ofstream> file;
  if (!output_path.empty()) {
    file = std::make_unique<std::ofstream>(output_path);
    if (!*file) {
      std::cerr << "cannot open output file '" << output_path << "'\n";
      return cli::kParseError;
    }
  }
  std::ostream& out = file ? *file : std::cout;

  if (decompose->parsed()) {
    if (!g.is_finite()) return cli::kParseError;
    return cli::cmd_decompose(g, format, out);
  }
  if (kernel->parsed()) {
    if (!g.is_finite()) return cli::kParseError;
    return cli::cmd_kernel(g, q, Q, check, out, std::cerr);
  }
  if (evolve->parsed()) return cli::cmd_evolve(evolve_config, out, std::cerr);
  if (compose->parsed()) return cli::cmd_compose(compose_path, format, out, std::cerr);
  return cli::cmd_verify(verify_options, out);
}
