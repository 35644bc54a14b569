#include "abcpac/particles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abcpac/errors.hpp"
#include "abcpac/numeric.hpp"

namespace abcpac {

std::string to_string(KernelKind kind) {
  return kind == KernelKind::kExponential ? "exponential" : "uniform";
}

KernelKind kernel_kind_from_string(const std::string& s) {
  if (s == "exponential") return KernelKind::kExponential;
  if (s == "uniform") return KernelKind::kUniform;
  throw InvalidConfigError("unknown kernel '" + s + "'", "smc.kernel");
}

double log_kernel(KernelKind kind, double lambda, double d) {
  if (kind == KernelKind::kExponential) return -lambda * d;
  return lambda * d <= 1.0 ? 0.0 : kNegInf;
}

double log_kernel_sum(KernelKind kind, std::span<const double> dists, double lambda) {
  if (kind == KernelKind::kExponential) return log_sum_exp_scaled(dists, -lambda);
  std::size_t inside = 0;
  for (double d : dists) inside += lambda * d <= 1.0 ? 1 : 0;
  return inside == 0 ? kNegInf : std::log(static_cast<double>(inside));
}

std::vector<double> ParticleSystem::log_weights() const {
  std::vector<double> lw(particles.size());
  std::transform(particles.begin(), particles.end(), lw.begin(), [](const Particle& p) { return p.log_weight; });
  return lw;
}

std::vector<double> ParticleSystem::normalized_weights() const {
  const auto lw = log_weights();
  const double total = log_sum_exp(lw);
  if (total == kNegInf || std::isnan(total)) throw DegenerateSystemError("every particle weight is zero");
  std::vector<double> w(lw.size());
  std::transform(lw.begin(), lw.end(), w.begin(), [total](double v) { return std::exp(v - total); });
  return w;
}

void ParticleSystem::normalize() {
  const auto lw = log_weights();
  const double total = log_sum_exp(lw);
  if (total == kNegInf || std::isnan(total)) throw DegenerateSystemError("every particle weight is zero");
  for (auto& p : particles) p.log_weight -= total;
}

void SimulationContext::simulate_replicate(const Vector& theta, Rng& rng, Dataset& buffer, Vector& stats,
                                           double& dist) const {
  model.simulate_into(theta, n, rng, buffer);
  summarize_into(summary, buffer, stats);
  dist = abcpac::distance(distance, stats, observed_stats);
}

ThetaMoments weighted_theta_moments(const ParticleSystem& system) {
  const auto w = system.normalized_weights();
  const auto d = system.particles.front().theta.size();
  Vector mean = Vector::Zero(d);
  for (std::size_t i = 0; i < w.size(); ++i) mean += w[i] * system.particles[i].theta;
  Vector var = Vector::Zero(d);
  for (std::size_t i = 0; i < w.size(); ++i) {
    var += w[i] * (system.particles[i].theta - mean).array().square().matrix();
  }
  return {mean, var.array().sqrt().matrix()};
}

Vector estimate_statistic_mean(const ParticleSystem& system, KernelKind kernel) {
  const auto w = system.normalized_weights();
  Vector acc = Vector::Zero(system.observed_stats.size());
  std::vector<double> lk;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const auto& p = system.particles[i];
    lk.resize(p.dists.size());
    for (std::size_t k = 0; k < lk.size(); ++k) lk[k] = log_kernel(kernel, system.lambda, p.dists[k]);
    const double total = log_sum_exp(lk);
    if (total == kNegInf) continue;
    for (std::size_t k = 0; k < lk.size(); ++k) acc += w[i] * std::exp(lk[k] - total) * p.stats[k];
  }
  return acc;
}

}  // namespace abcpac
