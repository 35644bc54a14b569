#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abcpac/models.hpp"
#include "abcpac/rng.hpp"
#include "abcpac/statistics.hpp"

namespace abcpac {

/// ABC kernel K_lambda(d). The uniform kernel is parametrized by lambda = 1/epsilon so
/// that both kernels share an increasing temperature ladder starting at 0.
enum class KernelKind {
  kExponential,  ///< exp(-lambda d)
  kUniform,      ///< 1{lambda d <= 1}
};

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& s);

/// log K_lambda(d) for a single distance.
double log_kernel(KernelKind kind, double lambda, double d);
/// log sum_i K_lambda(d_i), stable for large lambda * d.
double log_kernel_sum(KernelKind kind, std::span<const double> dists, double lambda);

/// One point of the joint (theta, X^{n,1:M}) space together with its importance weight.
struct Particle {
  Vector theta;
  std::vector<Vector> stats;  ///< S(X^{n,i}), i = 1..M
  std::vector<double> dists;  ///< d(S(X^{n,i}), S(Y^n))
  double log_weight = 0.0;

  std::size_t replicates() const { return dists.size(); }
};

/// Weighted population at the current temperature.
struct ParticleSystem {
  std::vector<Particle> particles;
  double lambda = 0.0;
  std::size_t replicates = 1;  ///< M
  double log_z = 0.0;          ///< running estimate of log Z_{lambda, pi}
  Vector observed_stats;

  std::size_t size() const { return particles.size(); }
  std::vector<double> log_weights() const;
  /// Normalized weights (sum to one). Throws DegenerateSystemError if all are -inf.
  std::vector<double> normalized_weights() const;
  /// Shifts log weights so that they log-sum to zero.
  void normalize();
};

/// Everything needed to turn a parameter into a replicate (S(X^n), d).
struct SimulationContext {
  const GenerativeModel& model;
  const SummarySpec& summary;
  const DistanceSpec& distance;
  const Vector& observed_stats;
  std::size_t n;

  /// Simulates one dataset at theta, writes its statistic and distance.
  /// `buffer` is scratch space.
  void simulate_replicate(const Vector& theta, Rng& rng, Dataset& buffer, Vector& stats, double& dist) const;
};

/// Weighted mean and (biased, weight-normalized) standard deviation of theta.
struct ThetaMoments {
  Vector mean;
  Vector sd;
};
ThetaMoments weighted_theta_moments(const ParticleSystem& system);

/// Estimate of rho_lambda(S): sum_i W_i sum_k w_ik S_ik with w_ik the within-particle
/// kernel weights at the system's temperature.
Vector estimate_statistic_mean(const ParticleSystem& system, KernelKind kernel);

}  // namespace abcpac
