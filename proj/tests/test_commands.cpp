#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "quadprop/commands.hpp"

using namespace quadprop;
using namespace quadprop::cli;

namespace {

const std::string kData = QUADPROP_TEST_DATA_DIR;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<std::string> lines(const std::string& s) { return split(s, '\n'); }

double field(const std::string& csv, const std::string& name) {
  const auto rows = lines(csv);
  const auto header = split(rows.at(0), ',');
  const auto values = split(rows.at(1), ',');
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return std::stod(values.at(i));
  }
  ADD_FAILURE() << "missing field " << name;
  return NAN;
}

}  // namespace

TEST(FormatReal, FixedScientific) {
  EXPECT_EQ(format_real(1.0), "1.000000000000e+00");
  EXPECT_EQ(format_real(-0.0), "0.000000000000e+00");
  EXPECT_EQ(format_real(-0.1122), "-1.122000000000e-01");
}

TEST(Decompose, FreeParticle) {
  std::ostringstream out;
  ASSERT_EQ(cmd_decompose({1, 0, 0}, OutputFormat::csv, out), kOk);
  const std::string csv = out.str();
  EXPECT_EQ(field(csv, "A"), 1);
  EXPECT_EQ(field(csv, "B"), 1);
  EXPECT_EQ(field(csv, "C"), 0);
  EXPECT_EQ(field(csv, "D"), 1);
  EXPECT_EQ(field(csv, "s_re"), 1);
  EXPECT_EQ(field(csv, "s_im"), 0.5);
  EXPECT_EQ(field(csv, "r_re"), 0);
  EXPECT_EQ(field(csv, "r_im"), -0.5);
}

TEST(Decompose, IdentityHasZeroResiduals) {
  std::ostringstream out;
  ASSERT_EQ(cmd_decompose({0, 0, 0}, OutputFormat::csv, out), kOk);
  EXPECT_EQ(field(out.str(), "A"), 1);
  EXPECT_EQ(field(out.str(), "B"), 0);
  EXPECT_EQ(field(out.str(), "unitarity_residual"), 0);
  EXPECT_EQ(field(out.str(), "symplectic_residual"), 0);
}

TEST(Decompose, QuarterTurnJson) {
  std::ostringstream out;
  ASSERT_EQ(cmd_decompose({1.5708, 0, 1.5708}, OutputFormat::json, out), kOk);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_NEAR(j["A"].get<double>(), 0, 1e-4);
  EXPECT_NEAR(j["B"].get<double>(), 1, 1e-4);
  EXPECT_NEAR(j["C"].get<double>(), -1, 1e-4);
  EXPECT_NEAR(j["D"].get<double>(), 0, 1e-4);
  EXPECT_NEAR(j["delta_sq"].get<double>(), -1.5708 * 1.5708, 1e-12);
}

TEST(Decompose, ByteIdenticalAcrossRuns) {
  std::ostringstream a, b;
  cmd_decompose({0.3, -1.2, 2.5}, OutputFormat::csv, a);
  cmd_decompose({0.3, -1.2, 2.5}, OutputFormat::csv, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Kernel, FreeParticleValue) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_kernel({1, 0, 0}, 0.0, 1.0, false, out, err), kOk);
  const auto parts = split(lines(out.str()).at(0), ' ');
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_NEAR(std::stod(parts[0]), 0.3828, 5e-5);
  EXPECT_NEAR(std::stod(parts[1]), -0.1123, 5e-5);
  EXPECT_EQ(parts[0], "3.828049175445e-01");
  EXPECT_EQ(parts[1], "-1.123180225772e-01");
}

TEST(Kernel, FocalPointExitCode) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_kernel({0, 0.6931, 0}, 0.0, 0.0, false, out, err), kFocalPoint);
  EXPECT_NE(err.str().find("focal point: B=0"), std::string::npos);
  EXPECT_TRUE(out.str().empty());
}

TEST(Kernel, CheckReportsDualRouteDifference) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_kernel({1.5708, 0, 1.5708}, 1.0, 1.0, true, out, err), kOk);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 3u);
  const auto diff = split(rows[2], ' ');
  ASSERT_EQ(diff.at(0), "diff");
  EXPECT_LT(std::stod(diff.at(1)), 1e-10);
}

TEST(Evolve, FreeScheduleAgreesWithGrid) {
  EvolveConfig config;
  config.schedule_path = kData + "/free.sched";
  config.stride = 64;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_evolve(config, out, err), kOk) << err.str();
  const auto rows = lines(out.str());
  EXPECT_EQ(rows.front(), "x,re_kernel_route,im_kernel_route,re_grid_route,im_grid_route,abs_diff");
  EXPECT_EQ(rows.size(), 2u + 4096 / 64);
  const auto footer = split(rows.back(), ',');
  ASSERT_EQ(footer.at(0), "# l2_diff");
  EXPECT_LT(std::stod(footer.at(1)), 1e-3);
}

TEST(Evolve, EmptyScheduleReturnsInput) {
  EvolveConfig config;
  config.schedule_path = kData + "/empty.sched";
  config.points = 512;
  config.x_min = -10;
  config.x_max = 10;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_evolve(config, out, err), kOk) << err.str();
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 2u + 512);
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    EXPECT_LT(std::stod(split(rows[i], ',').at(5)), 1e-12);
  }
}

TEST(Evolve, CausticExitCode) {
  EvolveConfig config;
  config.schedule_path = kData + "/harmonic_to_pi.sched";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_evolve(config, out, err), kFocalPoint);
  EXPECT_NE(err.str().find("focal point"), std::string::npos);
}

TEST(Evolve, BoundaryLeakExitCode) {
  EvolveConfig config;
  config.schedule_path = kData + "/free_long.sched";
  config.x_min = -10;
  config.x_max = 10;
  config.points = 512;
  config.steps = 100;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_evolve(config, out, err), kBoundaryLeak);
}

TEST(Evolve, ParseErrors) {
  EvolveConfig config;
  std::ostringstream out, err;
  config.schedule_path = kData + "/malformed.sched";
  EXPECT_EQ(cmd_evolve(config, out, err), kParseError);
  config.schedule_path = kData + "/does_not_exist.sched";
  EXPECT_EQ(cmd_evolve(config, out, err), kParseError);
  config.schedule_path = kData + "/free.sched";
  config.points = 1000;
  EXPECT_EQ(cmd_evolve(config, out, err), kParseError);
}

TEST(Compose, QuarterTurnSchedule) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_compose(kData + "/harmonic_quarters.sched", OutputFormat::json, out, err), kOk);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["steps"].get<int>(), 2);
  EXPECT_NEAR(j["A"].get<double>(), 0, 1e-15);
  EXPECT_NEAR(j["B"].get<double>(), 1, 1e-15);
  EXPECT_NEAR(j["C"].get<double>(), -1, 1e-15);
  EXPECT_NEAR(j["s_im"].get<double>(), 1, 1e-15);
  EXPECT_FALSE(j["focal_point"].get<bool>());
  EXPECT_NEAR(j["w_inv_b"].get<double>(), 1, 1e-15);
}

TEST(Compose, FocalScheduleStillReportsMatrix) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_compose(kData + "/harmonic_to_pi.sched", OutputFormat::json, out, err), kOk);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_NEAR(j["A"].get<double>(), -1, 1e-15);
  EXPECT_TRUE(j["focal_point"].get<bool>());
  EXPECT_TRUE(j["w_inv_b"].is_null());
}

TEST(Verify, SummarySchemaAndFaultInjection) {
  std::ostringstream out;
  ASSERT_EQ(cmd_verify({}, out), kOk) << out.str();
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_TRUE(j["passed"].get<bool>());
  for (const char* suite : {"lie_core", "symplectic", "propagator", "iwop", "oracle"}) {
    ASSERT_TRUE(j["suites"].contains(suite)) << suite;
    EXPECT_TRUE(j["suites"][suite]["passed"].get<bool>()) << suite;
  }
  std::ostringstream faulty;
  VerifyOptions options;
  options.inject_fault = true;
  EXPECT_EQ(cmd_verify(options, faulty), kVerifyFailed);
  EXPECT_FALSE(nlohmann::json::parse(faulty.str())["suites"]["lie_core"]["passed"].get<bool>());
}
