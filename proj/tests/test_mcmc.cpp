#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "abcpac/config.hpp"
#include "abcpac/experiments.hpp"
#include "abcpac/mcmc.hpp"
#include "oracles.hpp"

namespace {

using namespace abcpac;

/// Flat prior on the real line; used to isolate the kernel part of the ratio.
class FlatModel final : public GenerativeModel {
 public:
  std::size_t param_dim() const override { return 1; }
  Vector sample_prior(Rng&) const override { return Vector::Zero(1); }
  double prior_logpdf(const Vector&) const override { return 0.0; }
  void simulate_into(const Vector& theta, std::size_t n, Rng& rng, Dataset& out) const override {
    std::normal_distribution<double> g(theta[0], 1.0);
    out.resize(n);
    for (auto& x : out) x = g(rng);
  }
};

Particle particle(Vector theta, std::vector<double> dists) {
  Particle p;
  p.theta = std::move(theta);
  p.dists = std::move(dists);
  p.stats.assign(p.dists.size(), Vector::Zero(1));
  return p;
}

TEST(Calibrate, TwoPointVariance) {
  std::vector<Vector> thetas{Vector::Unit(3, 0), -Vector::Unit(3, 0)};
  const std::vector<double> w{0.5, 0.5};
  const auto cal = calibrate(thetas, w, 1.0, 1e-6);
  Eigen::MatrixXd want = Eigen::MatrixXd::Zero(3, 3);
  want(0, 0) = 1.0;
  EXPECT_LT((cal.covariance - want).cwiseAbs().maxCoeff(), 1e-14);
  const Eigen::MatrixXd rebuilt = cal.factor * cal.factor.transpose();
  EXPECT_LT((rebuilt - cal.scale * (want + cal.ridge * Eigen::MatrixXd::Identity(3, 3))).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_FALSE(cal.isotropic_fallback);
}

TEST(Calibrate, IdenticalParticlesFallBackToIsotropic) {
  std::vector<Vector> thetas(5, Vector::Constant(2, 1.5));
  const std::vector<double> w(5, 0.2);
  const auto cal = calibrate(thetas, w, 2.0, 1e-8);
  EXPECT_TRUE(cal.isotropic_fallback);
  const Eigen::MatrixXd rebuilt = cal.factor * cal.factor.transpose();
  EXPECT_TRUE(rebuilt.isApprox(2.0 * 1e-8 * Eigen::MatrixXd::Identity(2, 2), 1e-12));
}

TEST(Calibrate, MatchesTextbookWeightedCovariance) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<Vector> thetas;
  std::vector<double> w;
  double sw = 0.0;
  for (int i = 0; i < 200; ++i) {
    Vector t(4);
    for (int k = 0; k < 4; ++k) t[k] = g(rng) * (k + 1) + (k == 1 ? t[0] : 0.0);
    thetas.push_back(t);
    w.push_back(u(rng));
    sw += w.back();
  }
  for (auto& v : w) v /= sw;
  Vector mean = Vector::Zero(4);
  for (int i = 0; i < 200; ++i) mean += w[i] * thetas[i];
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 200; ++i) cov += w[i] * (thetas[i] - mean) * (thetas[i] - mean).transpose();
  const auto cal = calibrate(thetas, w, 1.0, 1e-9);
  EXPECT_LT((cal.covariance - cov).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(LogAcceptanceRatio, Examples) {
  const FlatModel flat;
  EXPECT_EQ(log_acceptance_ratio(particle(Vector::Zero(1), {0.4, 1.2}),
                                 Proposal{Vector::Zero(1), {Vector::Zero(1), Vector::Zero(1)}, {0.4, 1.2}}, 3.0, flat),
            0.0);
  EXPECT_NEAR(log_acceptance_ratio(particle(Vector::Zero(1), {2.0}), Proposal{Vector::Zero(1), {Vector::Zero(1)}, {1.0}},
                                   1.0, flat),
              1.0, 1e-15);
}

TEST(LogAcceptanceRatio, MatchesNaiveSummation) {
  const auto model = MixtureModel::with_default_prior(0.8);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    Vector a(4), b(4);
    for (int k = 0; k < 4; ++k) {
      a[k] = g(rng);
      b[k] = g(rng);
    }
    std::vector<double> d0, d1;
    for (int k = 0; k < 3; ++k) {
      d0.push_back(4.0 * u(rng));
      d1.push_back(4.0 * u(rng));
    }
    const double lambda = 5.0 * u(rng);
    const Particle cur = particle(a, d0);
    const Proposal prop{b, std::vector<Vector>(3, Vector::Zero(1)), d1};
    const double want = oracle::naive_log_ratio(d1, d0, lambda, model.prior_logpdf(b), model.prior_logpdf(a));
    EXPECT_NEAR(log_acceptance_ratio(cur, prop, lambda, model), want, 1e-12);
  }
}

TEST(LogAcceptanceRatio, OutsidePriorSupportIsRejected) {
  const auto model = DiscreteToyModel::iid({0.0, 1.0}, {0.5, 0.5}, {0.0, 1.0}, {{0.5, 0.5}, {0.5, 0.5}}, 1);
  const double r = log_acceptance_ratio(particle(Vector::Zero(1), {0.0}),
                                        Proposal{Vector::Constant(1, 0.5), {Vector::Zero(1)}, {0.0}}, 1.0, model);
  EXPECT_EQ(r, -std::numeric_limits<double>::infinity());
}

struct Toy {
  RunConfig config = preset("toy-discrete");
  std::unique_ptr<GenerativeModel> model = build_model(config.model);
  Dataset y = build_observations(config.data, 1);
  Vector ys = summarize(config.summary, y);
  SimulationContext ctx{*model, config.summary, config.distance, ys, y.size()};

  ParticleSystem prior_system(std::size_t n, std::size_t m, double lambda) {
    ParticleSystem sys;
    sys.observed_stats = ys;
    sys.lambda = lambda;
    sys.replicates = m;
    Dataset buf;
    for (std::size_t i = 0; i < n; ++i) {
      Rng rng = derive_stream(99, StreamTag::kInit, 0, i);
      Particle p;
      p.theta = model->sample_prior(rng);
      p.stats.resize(m);
      p.dists.resize(m);
      for (std::size_t k = 0; k < m; ++k) ctx.simulate_replicate(p.theta, rng, buf, p.stats[k], p.dists[k]);
      p.log_weight = -std::log(static_cast<double>(n));
      sys.particles.push_back(std::move(p));
    }
    return sys;
  }
};

TEST(Rejuvenate, ZeroStepsLeaveTheSystemUnchanged) {
  Toy toy;
  auto sys = toy.prior_system(50, 1, 1.0);
  const auto before = sys.particles;
  const auto cal = calibrate(sys, 1.0);
  const auto r = rejuvenate(sys, 0, cal, toy.ctx, KernelKind::kExponential, 1, 1);
  EXPECT_TRUE(r.undefined_rate);
  EXPECT_EQ(r.acceptance_rate, 1.0);
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(sys.particles[i].theta, before[i].theta);
}

TEST(Rejuvenate, TinyStepsAreAlmostAlwaysAccepted) {
  const FlatModel flat;
  const SummarySpec summary = SummarySpec::mean();
  const DistanceSpec dist = DistanceSpec::lp(1.0);
  const Vector ys = Vector::Zero(1);
  const SimulationContext ctx{flat, summary, dist, ys, 10000};
  ParticleSystem sys;
  sys.observed_stats = ys;
  sys.lambda = 0.0;
  Dataset buf;
  for (int i = 0; i < 100; ++i) {
    Rng rng(static_cast<std::uint64_t>(i));
    Particle p;
    p.theta = Vector::Constant(1, 0.01 * i);
    p.stats.resize(1);
    p.dists.resize(1);
    ctx.simulate_replicate(p.theta, rng, buf, p.stats[0], p.dists[0]);
    p.log_weight = -std::log(100.0);
    sys.particles.push_back(p);
  }
  sys.lambda = 1.0;
  const auto cal = calibrate(sys, 1e-8);
  const auto r = rejuvenate(sys, 2, cal, ctx, KernelKind::kExponential, 3, 1);
  EXPECT_GT(r.acceptance_rate, 0.95);
}

TEST(Rejuvenate, LongRunOccupationMatchesTheEnumeratedMarginal) {
  Toy toy;
  const double lambda = 2.0;
  auto sys = toy.prior_system(40000, 1, lambda);
  // start every chain from the prior; many sweeps bring the joint chain to pi_lambda^M
  const auto cal = calibrate(sys, 1.0);
  for (std::uint64_t sweep = 1; sweep <= 100; ++sweep) {
    rejuvenate(sys, 1, cal, toy.ctx, KernelKind::kExponential, 5, sweep);
  }
  const auto ref = oracle::discrete_posterior(toy.config.model.prior_weights, toy.config.model.alphabet,
                                              toy.config.model.outcome_probs, toy.config.model.sample_size, toy.y,
                                              lambda);
  std::vector<double> freq(ref.posterior.size(), 0.0);
  for (const auto& p : sys.particles) freq[static_cast<std::size_t>(p.theta[0])] += 1.0 / 40000.0;
  double tv = 0.0;
  for (std::size_t a = 0; a < freq.size(); ++a) tv += 0.5 * std::abs(freq[a] - ref.posterior[a]);
  EXPECT_LT(tv, 0.02);
}

}  // namespace
