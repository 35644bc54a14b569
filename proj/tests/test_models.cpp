#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "abcpac/errors.hpp"
#include "abcpac/models.hpp"
#include "abcpac/rng.hpp"

namespace {

using abcpac::Dataset;
using abcpac::DiagonalGaussianPrior;
using abcpac::DiscreteToyModel;
using abcpac::MixtureModel;
using abcpac::Rng;
using abcpac::TruthGenerator;
using abcpac::Vector;

TEST(MixtureModel, DegenerateMixtureReproducesStandardNormalDraws) {
  const auto model = MixtureModel::with_default_prior(0.8);
  const Vector theta = Vector::Zero(4);
  Rng a(42), b(42);
  const Dataset x = abcpac::simulate_dataset(model, theta, 4, a);
  const Dataset y = abcpac::simulate_dataset(model, theta, 4, b);
  ASSERT_EQ(x.size(), 4u);
  EXPECT_EQ(x, y);
  for (double v : x) EXPECT_TRUE(std::isfinite(v));
}

TEST(MixtureModel, ComponentWeightMatchesBinomialBand) {
  const auto model = MixtureModel::with_default_prior(0.8);
  Vector theta(4);
  theta << 0.0, 0.0, 10.0, 0.0;
  Rng rng(7);
  const std::size_t n = 100000;
  const Dataset x = abcpac::simulate_dataset(model, theta, n, rng);
  double below = 0.0;
  for (double v : x) below += v < 5.0;
  EXPECT_NEAR(below / static_cast<double>(n), 0.8, 0.004);
}

TEST(MixtureModel, NonFiniteThetaIsRejected) {
  const auto model = MixtureModel::with_default_prior(0.8);
  Vector theta = Vector::Zero(4);
  theta[2] = std::nan("");
  Rng rng(1);
  EXPECT_THROW(abcpac::simulate_dataset(model, theta, 3, rng), abcpac::InvalidParameterError);
  EXPECT_THROW(abcpac::prior_logpdf(model, theta), abcpac::InvalidParameterError);
  EXPECT_THROW(abcpac::prior_logpdf(model, Vector::Zero(3)), abcpac::InvalidParameterError);
}

TEST(DiagonalGaussianPrior, StandardNormalAtTheMode) {
  const auto prior = DiagonalGaussianPrior::isotropic(4, 1.0);
  EXPECT_NEAR(prior.logpdf(Vector::Zero(4)), -2.0 * std::log(2.0 * std::numbers::pi), 1e-12);
}

TEST(DiagonalGaussianPrior, MatchesClosedFormDensity) {
  const auto prior = DiagonalGaussianPrior::isotropic(4, 100.0);
  const Vector theta = Vector::Ones(4);
  double want = 0.0;
  for (int k = 0; k < 4; ++k) want += -0.5 * std::log(2.0 * std::numbers::pi * 100.0) - 0.5 / 100.0;
  EXPECT_NEAR(prior.logpdf(theta), want, 1e-12);
}

TEST(DiscreteToyModel, PointMassLikelihoodReturnsTheFixedDataset) {
  const DiscreteToyModel model({3.0}, {1.0}, {{1.0, 2.0}, {2.0, 2.0}}, {{0.0, 1.0}});
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(abcpac::simulate_dataset(model, Vector::Constant(1, 3.0), 2, rng), (Dataset{2.0, 2.0}));
  }
}

TEST(DiscreteToyModel, IidTableEnumeratesEveryDataset) {
  const auto model = DiscreteToyModel::iid({0.0, 1.0}, {0.5, 0.5}, {0.0, 1.0, 2.0},
                                           {{0.7, 0.2, 0.1}, {0.1, 0.2, 0.7}}, 3);
  EXPECT_EQ(model.datasets().size(), 27u);
  for (const auto& row : model.likelihood()) {
    double s = 0.0;
    for (double v : row) s += v;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
  EXPECT_EQ(model.prior_logpdf(Vector::Constant(1, 0.5)), -std::numeric_limits<double>::infinity());
  EXPECT_NEAR(model.prior_logpdf(Vector::Constant(1, 1.0)), std::log(0.5), 1e-15);
}

TEST(DiscreteToyModel, ProposalLeavesTheCurrentAtom) {
  const auto model = DiscreteToyModel::iid({0.0, 1.0, 2.0}, {0.2, 0.3, 0.5}, {0.0, 1.0}, {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}, 1);
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto next = model.propose(Vector::Constant(1, 1.0), rng);
    ASSERT_TRUE(next.has_value());
    EXPECT_NE((*next)[0], 1.0);
    EXPECT_TRUE(model.atom_index(*next).has_value());
  }
}

TEST(TruthGenerator, TwoComponentIsReproducible) {
  TruthGenerator g;
  g.kind = TruthGenerator::Kind::kTwoComponent;
  g.weights = {0.8, 0.2};
  g.means = {0.0, 2.5};
  g.sds = {1.0, 0.5};
  g.n = 90;
  Rng a(3), b(3);
  const auto x = abcpac::generate_observations(g, a);
  EXPECT_EQ(x.size(), 90u);
  EXPECT_EQ(x, abcpac::generate_observations(g, b));
  for (double v : x) EXPECT_TRUE(std::isfinite(v));
}

TEST(TruthGenerator, TruncationClampsEveryObservation) {
  auto g = TruthGenerator::three_component_default(5000);
  g.truncation = std::make_pair(-5.0, 5.0);
  Rng rng(11);
  for (double v : abcpac::generate_observations(g, rng)) {
    EXPECT_GE(v, -5.0);
    EXPECT_LE(v, 5.0);
  }
}

TEST(TruthGenerator, ThreeComponentSampleMean) {
  const auto g = TruthGenerator::three_component_default(1000000);
  EXPECT_NEAR(g.mean(), -0.4, 1e-15);
  Rng rng(13);
  const auto x = abcpac::generate_observations(g, rng);
  double s = 0.0;
  for (double v : x) s += v;
  const double band = 3.0 * std::sqrt(g.variance() / 1e6);
  EXPECT_NEAR(s / 1e6, -0.4, band);
}

TEST(TruthGenerator, InconsistentWeightsAreRejected) {
  auto g = TruthGenerator::three_component_default(10);
  g.weights = {0.5, 0.5, 0.5};
  EXPECT_THROW(g.validate(), abcpac::InvalidConfigError);
}

}  // namespace
