#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "abcpac/particles.hpp"

namespace abcpac {

/// Gaussian random-walk proposal N(theta, scale * (cov + ridge I)).
struct ProposalCalibration {
  Eigen::MatrixXd covariance;  ///< weighted population covariance
  double scale = 1.0;
  double ridge = 0.0;
  Eigen::MatrixXd factor;  ///< lower Cholesky factor of scale * (cov + ridge I)
  bool isotropic_fallback = false;
};

/// 2.38^2 / d.
double default_rw_scale(std::size_t dim);
/// 1e-8 * trace(cov) / d, or 1e-8 when the trace vanishes.
double default_ridge_floor(const Eigen::MatrixXd& cov);

/// Weighted covariance of the population; the ridge starts at `ridge_floor` and grows
/// by factors of ten until the Cholesky factorization succeeds. A population with
/// no spread yields ridge_floor * I with `isotropic_fallback` set.
ProposalCalibration calibrate(std::span<const Vector> thetas, std::span<const double> weights, double scale,
                              double ridge_floor);
/// Convenience overload on a particle system with the default ridge rule.
ProposalCalibration calibrate(const ParticleSystem& system, double scale);

/// Candidate state of the joint chain: theta' with its M fresh replicates.
struct Proposal {
  Vector theta;
  std::vector<Vector> stats;
  std::vector<double> dists;
};

/// log of the pseudo-marginal MH ratio before clamping at zero:
///   log sum_i K(d'_i) - log sum_i K(d_i) + log pi(theta') - log pi(theta).
/// Proposals outside the prior support give -inf.
double log_acceptance_ratio(const Particle& current, const Proposal& proposal, double lambda,
                            const GenerativeModel& model, KernelKind kernel = KernelKind::kExponential);

struct RejuvenationResult {
  double acceptance_rate = 1.0;
  bool undefined_rate = false;  ///< no moves attempted; rate reported as 1
  std::uint64_t simulator_calls = 0;
};

/// K_steps MH sweeps over every particle targeting pi_lambda^M. Particle i at ladder
/// step t draws from its own stream derived from (seed, t, i).
RejuvenationResult rejuvenate(ParticleSystem& system, std::size_t k_steps, const ProposalCalibration& calibration,
                              const SimulationContext& ctx, KernelKind kernel, std::uint64_t seed, std::uint64_t step);

}  // namespace abcpac
