#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "abcpac/errors.hpp"
#include "abcpac/trace_io.hpp"

namespace {

using namespace abcpac;

LadderTrace sample_trace() {
  LadderTrace t;
  for (int i = 1; i <= 3; ++i) {
    LadderStep s;
    s.step = static_cast<std::size_t>(i);
    s.lambda = 0.1 * i * i + 1.0 / 3.0;
    s.ess = 900.0 - i;
    s.accept_rate = 0.2 / i;
    s.replicates = static_cast<std::size_t>(1 << i);
    s.log_z = -std::sqrt(2.0) * i;
    s.theta_mean = Eigen::Vector2d(0.1 * i, -1.0 / 7.0);
    s.theta_sd = Eigen::Vector2d(1.0, 2.0 / 3.0);
    t.steps.push_back(s);
  }
  return t;
}

TEST(TraceCsv, HeaderAndExactRoundTrip) {
  const auto t = sample_trace();
  std::ostringstream os;
  write_trace_csv(os, t, 2);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "step,lambda,ess,accept_rate,M,log_z,theta_mean_1,theta_mean_2,theta_sd_1,theta_sd_2");
  std::istringstream is(text);
  const auto back = read_trace_csv(is);
  ASSERT_EQ(back.steps.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.steps[i].lambda, t.steps[i].lambda);
    EXPECT_EQ(back.steps[i].log_z, t.steps[i].log_z);
    EXPECT_EQ(back.steps[i].replicates, t.steps[i].replicates);
    EXPECT_EQ(back.steps[i].theta_sd[1], t.steps[i].theta_sd[1]);
  }
}

TEST(TraceCsv, MalformedRowsReportTheLine) {
  std::istringstream is("step,lambda,ess,accept_rate,M,log_z\n1,0.5,10,0.2,1,-1\n2,0.4,10,0.2,1,-2\n");
  try {
    read_trace_csv(is);
    FAIL() << "non-increasing ladder accepted";
  } catch (const InvalidInputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  std::istringstream junk("step,lambda,ess,accept_rate,M,log_z\n1,abc,10,0.2,1,-1\n");
  EXPECT_THROW(read_trace_csv(junk), InvalidInputError);
}

TEST(BoundCsv, ComponentsAndLabels) {
  BoundConstants c;
  c.n = 10;
  std::vector<BoundReport> rows{empirical_bound(-1.0, 2.0, c), empirical_bound(-2.0, 4.0, c)};
  std::ostringstream os;
  const std::vector<std::string> labels{"a", "b"};
  write_bound_csv(os, rows, labels);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "row,lambda,beta,value,neg_log_z_over_lambda,f_over_lambda,log_inv_eps_over_lambda,provenance");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

TEST(FormatDouble, FullPrecision) {
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

}  // namespace
