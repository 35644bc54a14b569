#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abcpac/rng.hpp"

namespace abcpac {

using Vector = Eigen::VectorXd;
using Dataset = std::vector<double>;

/// Prior over a parameter space plus a conditional simulator of n-observation datasets.
///
/// Implementations are immutable after construction; every draw goes through the
/// caller's RNG so that the same (theta, n, stream state) reproduces the same dataset.
class GenerativeModel {
 public:
  virtual ~GenerativeModel() = default;

  virtual std::size_t param_dim() const = 0;
  virtual Vector sample_prior(Rng& rng) const = 0;
  /// Log prior density; -inf outside the support. Throws InvalidParameterError on
  /// non-finite or wrongly sized input.
  virtual double prior_logpdf(const Vector& theta) const = 0;
  /// Appends nothing: `out` is resized to n and overwritten.
  virtual void simulate_into(const Vector& theta, std::size_t n, Rng& rng, Dataset& out) const = 0;

  /// Optional model-specific symmetric proposal q(theta, .). Models on a discrete
  /// parameter set use this in place of the Gaussian random walk.
  virtual std::optional<Vector> propose(const Vector& /*theta*/, Rng& /*rng*/) const {
    return std::nullopt;
  }
};

/// Checks finiteness and dimension; throws InvalidParameterError.
void validate_theta(const GenerativeModel& model, const Vector& theta);

Dataset simulate_dataset(const GenerativeModel& model, const Vector& theta, std::size_t n, Rng& rng);
double prior_logpdf(const GenerativeModel& model, const Vector& theta);

/// Independent Gaussian prior, one (mean, sd) per coordinate.
class DiagonalGaussianPrior {
 public:
  DiagonalGaussianPrior(Vector mean, Vector sd);
  static DiagonalGaussianPrior isotropic(std::size_t dim, double variance);

  std::size_t dim() const { return static_cast<std::size_t>(mean_.size()); }
  const Vector& mean() const { return mean_; }
  const Vector& sd() const { return sd_; }
  Vector sample(Rng& rng) const;
  double logpdf(const Vector& theta) const;

 private:
  Vector mean_;
  Vector sd_;
};

/// Two-component Gaussian mixture with known weight p on component 1.
/// theta = (mu1, log sigma1, mu2, log sigma2).
class MixtureModel final : public GenerativeModel {
 public:
  MixtureModel(double p, DiagonalGaussianPrior prior);
  /// N(0,10^2) on the means, N(0,1) on the log standard deviations.
  static MixtureModel with_default_prior(double p);

  double weight() const { return p_; }
  const DiagonalGaussianPrior& prior() const { return prior_; }

  std::size_t param_dim() const override { return 4; }
  Vector sample_prior(Rng& rng) const override;
  double prior_logpdf(const Vector& theta) const override;
  void simulate_into(const Vector& theta, std::size_t n, Rng& rng, Dataset& out) const override;

 private:
  double p_;
  DiagonalGaussianPrior prior_;
};

/// theta ~ N(0, prior_var), X_i | theta ~ N(theta, noise_sd^2). One-dimensional
/// conjugate-style toy used for normalizing-constant checks.
class GaussianMeanModel final : public GenerativeModel {
 public:
  GaussianMeanModel(double prior_var, double noise_sd);

  double prior_var() const { return prior_var_; }
  double noise_sd() const { return noise_sd_; }

  std::size_t param_dim() const override { return 1; }
  Vector sample_prior(Rng& rng) const override;
  double prior_logpdf(const Vector& theta) const override;
  void simulate_into(const Vector& theta, std::size_t n, Rng& rng, Dataset& out) const override;

 private:
  double prior_var_;
  double noise_sd_;
};

/// Finite parameter set with an explicit likelihood table over all datasets of size n.
///
/// theta is one-dimensional and must equal one of the atoms exactly. Row `a` of the
/// table is the distribution of the dataset given atom `a`; datasets are listed in
/// `datasets` in the same column order.
class DiscreteToyModel final : public GenerativeModel {
 public:
  DiscreteToyModel(std::vector<double> atoms, std::vector<double> prior_weights,
                   std::vector<Dataset> datasets, std::vector<std::vector<double>> likelihood);

  /// Datasets of n i.i.d. draws from a per-atom categorical over `alphabet`.
  static DiscreteToyModel iid(std::vector<double> atoms, std::vector<double> prior_weights,
                              std::vector<double> alphabet,
                              std::vector<std::vector<double>> outcome_probs, std::size_t n);

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& prior_weights() const { return prior_; }
  const std::vector<Dataset>& datasets() const { return datasets_; }
  const std::vector<std::vector<double>>& likelihood() const { return table_; }
  std::size_t sample_size() const { return n_; }
  /// Index of the atom equal to theta[0], or nullopt.
  std::optional<std::size_t> atom_index(const Vector& theta) const;

  std::size_t param_dim() const override { return 1; }
  Vector sample_prior(Rng& rng) const override;
  double prior_logpdf(const Vector& theta) const override;
  /// Requires n == sample_size().
  void simulate_into(const Vector& theta, std::size_t n, Rng& rng, Dataset& out) const override;
  /// Uniform over the other atoms; symmetric.
  std::optional<Vector> propose(const Vector& theta, Rng& rng) const override;

 private:
  std::vector<double> atoms_;
  std::vector<double> prior_;
  std::vector<double> prior_cdf_;
  std::vector<Dataset> datasets_;
  std::vector<std::vector<double>> table_;
  std::vector<std::vector<double>> table_cdf_;
  std::size_t n_ = 0;
};

/// Data-generating distribution for the observed sample.
struct TruthGenerator {
  enum class Kind { kTwoComponent, kThreeComponent, kGaussian };

  Kind kind = Kind::kTwoComponent;
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> sds;
  std::size_t n = 90;
  std::optional<std::pair<double, double>> truncation;

  /// Throws InvalidConfigError on inconsistent sizes, weights not summing to one,
  /// non-positive sds or an empty interval.
  void validate() const;
  /// Mixture mean of the untruncated distribution.
  double mean() const;
  /// Mixture variance of the untruncated distribution.
  double variance() const;

  /// Defaults for the misspecified studies: weights (0.5,0.3,0.2), means (-2,0,3),
  /// sds (0.5,1,0.5).
  static TruthGenerator three_component_default(std::size_t n);
};

std::string to_string(TruthGenerator::Kind kind);
TruthGenerator::Kind truth_kind_from_string(const std::string& s);

Dataset generate_observations(const TruthGenerator& gen, Rng& rng);

}  // namespace abcpac
