#pragma once

#include <iosfwd>
#include <string>

#include "quadprop/lie_core.hpp"
#include "quadprop/verify.hpp"

namespace quadprop::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kParseError = 2,
  kFocalPoint = 3,
  kBoundaryLeak = 4,
};

enum class OutputFormat { csv, json };

/// "%.12e" in the C locale, with -0 printed as 0.
std::string format_real(double value);

struct EvolveConfig {
  std::string schedule_path;
  double center_q = 0.0;
  double center_p = 1.0;
  double width = 1.0;
  double phase = 0.0;
  double x_min = -40.0;
  double x_max = 40.0;
  int points = 4096;
  int steps = 1000;
  int stride = 1;
};

int cmd_decompose(const QuadraticGeneratord& g, OutputFormat format, std::ostream& out);
int cmd_kernel(const QuadraticGeneratord& g, double q, double Q, bool check, std::ostream& out,
               std::ostream& err);
int cmd_evolve(const EvolveConfig& config, std::ostream& out, std::ostream& err);
int cmd_compose(const std::string& schedule_path, OutputFormat format, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out);

}  // namespace quadprop::cli
