#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "abcpac/errors.hpp"
#include "abcpac/particles.hpp"

namespace {

using abcpac::KernelKind;
using abcpac::Particle;
using abcpac::ParticleSystem;
using abcpac::Vector;

constexpr double kInf = std::numeric_limits<double>::infinity();

Particle make(double theta, std::vector<double> dists, double log_w, std::vector<double> stats = {}) {
  Particle p;
  p.theta = Vector::Constant(1, theta);
  p.dists = std::move(dists);
  for (std::size_t k = 0; k < p.dists.size(); ++k) {
    p.stats.push_back(Vector::Constant(1, stats.empty() ? 0.0 : stats[k]));
  }
  p.log_weight = log_w;
  return p;
}

TEST(Kernel, ExponentialAndUniform) {
  EXPECT_DOUBLE_EQ(abcpac::log_kernel(KernelKind::kExponential, 2.0, 1.5), -3.0);
  EXPECT_EQ(abcpac::log_kernel(KernelKind::kUniform, 2.0, 0.5), 0.0);
  EXPECT_EQ(abcpac::log_kernel(KernelKind::kUniform, 2.0, 0.6), -kInf);
  EXPECT_EQ(abcpac::log_kernel(KernelKind::kUniform, 0.0, 1e9), 0.0);
}

TEST(Kernel, LogSumIsStableAtLargeTemperature) {
  const std::vector<double> d{10.0, 10.5, 11.0};
  const double lambda = 1000.0;
  const double want = -lambda * 10.0 + std::log(1.0 + std::exp(-500.0) + std::exp(-1000.0));
  EXPECT_NEAR(abcpac::log_kernel_sum(KernelKind::kExponential, d, lambda), want, 1e-9);
}

TEST(ParticleSystem, NormalizedWeightsSumToOne) {
  ParticleSystem sys;
  sys.particles = {make(0, {0}, -1000.0), make(1, {0}, -1001.0), make(2, {0}, -kInf)};
  const auto w = sys.normalized_weights();
  EXPECT_NEAR(w[0] + w[1] + w[2], 1.0, 1e-12);
  EXPECT_EQ(w[2], 0.0);
  sys.normalize();
  double s = 0.0;
  for (const auto& p : sys.particles) s += std::exp(p.log_weight);
  EXPECT_NEAR(s, 1.0, 1e-10);
}

TEST(ParticleSystem, AllZeroWeightsAreDegenerate) {
  ParticleSystem sys;
  sys.particles = {make(0, {0}, -kInf), make(1, {0}, -kInf)};
  EXPECT_THROW(sys.normalized_weights(), abcpac::DegenerateSystemError);
}

TEST(ThetaMoments, WeightedMeanAndSd) {
  ParticleSystem sys;
  sys.particles = {make(1.0, {0}, std::log(0.25)), make(3.0, {0}, std::log(0.75))};
  const auto m = abcpac::weighted_theta_moments(sys);
  EXPECT_NEAR(m.mean[0], 2.5, 1e-14);
  EXPECT_NEAR(m.sd[0], std::sqrt(0.25 * 2.25 + 0.75 * 0.25), 1e-14);
}

TEST(StatisticMean, UsesWithinParticleKernelWeights) {
  ParticleSystem sys;
  sys.lambda = 1.0;
  sys.observed_stats = Vector::Zero(1);
  sys.particles = {make(0.0, {0.0, 1.0}, std::log(0.5), {2.0, 4.0}), make(0.0, {0.0}, std::log(0.5), {6.0})};
  const double w0 = 1.0 / (1.0 + std::exp(-1.0));
  const double want = 0.5 * (w0 * 2.0 + (1.0 - w0) * 4.0) + 0.5 * 6.0;
  EXPECT_NEAR(abcpac::estimate_statistic_mean(sys, KernelKind::kExponential)[0], want, 1e-14);
}

}  // namespace
