#include "abcpac/madapt.hpp"

#include <cmath>
#include <vector>

#include "abcpac/errors.hpp"
#include "abcpac/numeric.hpp"

namespace abcpac {

std::string to_string(MPolicy policy) {
  switch (policy) {
    case MPolicy::kFixed: return "fixed";
    case MPolicy::kGibbs: return "gibbs";
    case MPolicy::kImportance: return "importance";
  }
  return "unknown";
}

MPolicy m_policy_from_string(const std::string& s) {
  if (s == "fixed") return MPolicy::kFixed;
  if (s == "gibbs") return MPolicy::kGibbs;
  if (s == "importance") return MPolicy::kImportance;
  throw InvalidConfigError("unknown M policy '" + s + "'", "smc.m_policy");
}

std::size_t gibbs_refresh(Particle& particle, double lambda, std::size_t m_new, const SimulationContext& ctx,
                          Rng& rng, KernelKind kernel) {
  if (m_new == 0) throw InvalidInputError("replicate count must be at least 1");
  const std::size_t m = particle.replicates();
  std::vector<double> lk(m);
  for (std::size_t k = 0; k < m; ++k) lk[k] = log_kernel(kernel, lambda, particle.dists[k]);
  const double total = log_sum_exp(lk);

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  std::size_t kept = m - 1;
  double cum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    cum += total == kNegInf ? 1.0 / static_cast<double>(m) : std::exp(lk[k] - total);
    if (u < cum) {
      kept = k;
      break;
    }
  }

  std::vector<Vector> stats(m_new);
  std::vector<double> dists(m_new);
  stats[0] = std::move(particle.stats[kept]);
  dists[0] = particle.dists[kept];
  Dataset buffer;
  for (std::size_t k = 1; k < m_new; ++k) ctx.simulate_replicate(particle.theta, rng, buffer, stats[k], dists[k]);
  particle.stats = std::move(stats);
  particle.dists = std::move(dists);
  return kept;
}

double is_refresh_weight(const Particle& particle, std::span<const double> fresh_dists, double lambda,
                         KernelKind kernel) {
  const double m = static_cast<double>(particle.replicates());
  const double m_fresh = static_cast<double>(fresh_dists.size());
  if (m == 0 || m_fresh == 0) throw InvalidInputError("replicate counts must be at least 1");
  return std::log(m) + log_kernel_sum(kernel, fresh_dists, lambda) - std::log(m_fresh) -
         log_kernel_sum(kernel, particle.dists, lambda);
}

MDecision adapt_m(double acceptance_rate, std::size_t m, double target, std::size_t m_max) {
  if (!(acceptance_rate >= 0.0 && acceptance_rate <= 1.0)) {
    throw InvalidInputError("acceptance rate must lie in [0,1]");
  }
  if (acceptance_rate >= target) return {m, false};
  if (2 * m <= m_max) return {2 * m, false};
  return {m, true};
}

}  // namespace abcpac
