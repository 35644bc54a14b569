#include "abcpac/mcmc.hpp"

#include <cmath>
#include <limits>

#include "abcpac/errors.hpp"
#include "abcpac/numeric.hpp"

namespace abcpac {

double default_rw_scale(std::size_t dim) { return 2.38 * 2.38 / static_cast<double>(dim); }

double default_ridge_floor(const Eigen::MatrixXd& cov) {
  const double floor = 1e-8 * cov.trace() / static_cast<double>(cov.rows());
  return floor > 0.0 && std::isfinite(floor) ? floor : 1e-8;
}

namespace {

Eigen::MatrixXd weighted_covariance(std::span<const Vector> thetas, std::span<const double> weights) {
  if (thetas.empty() || thetas.size() != weights.size()) {
    throw InvalidInputError("calibration needs one weight per particle");
  }
  const auto d = thetas.front().size();
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw DegenerateSystemError("calibration weights sum to zero");

  // shifted by the first particle so that a population without spread gives exactly zero
  const Vector& origin = thetas.front();
  Vector mean = Vector::Zero(d);
  for (std::size_t i = 0; i < thetas.size(); ++i) mean += (weights[i] / total) * (thetas[i] - origin);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const Vector c = thetas[i] - origin - mean;
    cov.noalias() += (weights[i] / total) * c * c.transpose();
  }
  return cov;
}

}  // namespace

ProposalCalibration calibrate(std::span<const Vector> thetas, std::span<const double> weights, double scale,
                              double ridge_floor) {
  if (!(scale > 0.0) || !(ridge_floor > 0.0)) throw InvalidInputError("calibration scale and ridge floor must be positive");
  const Eigen::MatrixXd cov = weighted_covariance(thetas, weights);
  const auto d = cov.rows();

  ProposalCalibration cal;
  cal.scale = scale;
  cal.covariance = cov;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
  if (cov.isZero(0.0)) {
    cal.isotropic_fallback = true;
    cal.ridge = ridge_floor;
    cal.factor = (scale * ridge_floor * eye).llt().matrixL();
    return cal;
  }
  double ridge = ridge_floor;
  for (int attempt = 0; attempt < 64; ++attempt, ridge *= 10.0) {
    Eigen::LLT<Eigen::MatrixXd> llt(scale * (cov + ridge * eye));
    if (llt.info() == Eigen::Success && llt.matrixL().toDenseMatrix().allFinite()) {
      cal.ridge = ridge;
      cal.factor = llt.matrixL();
      return cal;
    }
  }
  throw DegenerateSystemError("proposal covariance could not be made positive definite");
}

ProposalCalibration calibrate(const ParticleSystem& system, double scale) {
  std::vector<Vector> thetas;
  thetas.reserve(system.size());
  for (const auto& p : system.particles) thetas.push_back(p.theta);
  const auto w = system.normalized_weights();
  return calibrate(thetas, w, scale, default_ridge_floor(weighted_covariance(thetas, w)));
}

double log_acceptance_ratio(const Particle& current, const Proposal& proposal, double lambda,
                            const GenerativeModel& model, KernelKind kernel) {
  const double prior_new = model.prior_logpdf(proposal.theta);
  if (prior_new == kNegInf) return kNegInf;
  const double prior_old = model.prior_logpdf(current.theta);
  const double lik_new = log_kernel_sum(kernel, proposal.dists, lambda);
  const double lik_old = log_kernel_sum(kernel, current.dists, lambda);
  if (lik_new == kNegInf) return kNegInf;
  return (lik_new - lik_old) + (prior_new - prior_old);
}

RejuvenationResult rejuvenate(ParticleSystem& system, std::size_t k_steps, const ProposalCalibration& calibration,
                              const SimulationContext& ctx, KernelKind kernel, std::uint64_t seed, std::uint64_t step) {
  RejuvenationResult result;
  if (k_steps == 0) {
    result.undefined_rate = true;
    return result;
  }
  const auto count = static_cast<std::ptrdiff_t>(system.size());
  const double lambda = system.lambda;
  std::uint64_t accepted = 0;
  std::uint64_t calls = 0;

#pragma omp parallel for schedule(dynamic, 16) reduction(+ : accepted, calls)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    Particle& particle = system.particles[static_cast<std::size_t>(i)];
    Rng rng = derive_stream(seed, StreamTag::kMove, step, static_cast<std::uint64_t>(i));
    std::normal_distribution<double> z(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Dataset buffer;
    Proposal prop;
    const std::size_t m = particle.replicates();
    prop.stats.resize(m);
    prop.dists.resize(m);
    Vector noise(particle.theta.size());

    for (std::size_t s = 0; s < k_steps; ++s) {
      if (auto custom = ctx.model.propose(particle.theta, rng)) {
        prop.theta = std::move(*custom);
      } else {
        for (Eigen::Index j = 0; j < noise.size(); ++j) noise[j] = z(rng);
        prop.theta = particle.theta + calibration.factor * noise;
      }
      const double log_u = std::log(unif(rng));
      if (ctx.model.prior_logpdf(prop.theta) == kNegInf) continue;
      for (std::size_t k = 0; k < m; ++k) ctx.simulate_replicate(prop.theta, rng, buffer, prop.stats[k], prop.dists[k]);
      calls += m;
      const double ratio = log_acceptance_ratio(particle, prop, lambda, ctx.model, kernel);
      if (log_u < ratio) {
        std::swap(particle.theta, prop.theta);
        std::swap(particle.stats, prop.stats);
        std::swap(particle.dists, prop.dists);
        ++accepted;
      }
    }
  }
  result.acceptance_rate = static_cast<double>(accepted) / (static_cast<double>(count) * static_cast<double>(k_steps));
  result.simulator_calls = calls;
  return result;
}

}  // namespace abcpac
