#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "abcpac/particles.hpp"

namespace abcpac {

/// How the replicate count M changes between ladder steps.
enum class MPolicy {
  kFixed,       ///< never change M
  kGibbs,       ///< retain one replicate drawn by kernel weight, simulate the rest; weights untouched
  kImportance,  ///< draw a fresh set of M~ replicates and reweight the particle
};

std::string to_string(MPolicy policy);
MPolicy m_policy_from_string(const std::string& s);

/// Retains replicate k with probability K(d_k) / sum_j K(d_j) and fills the remaining
/// M_new - 1 slots with fresh simulations at the particle's theta. The retained
/// replicate moves to slot 0. log_weight is not touched.
/// Returns the retained index (in the old numbering).
std::size_t gibbs_refresh(Particle& particle, double lambda, std::size_t m_new, const SimulationContext& ctx,
                          Rng& rng, KernelKind kernel = KernelKind::kExponential);

/// log of  M sum_{i<=M~} K(d~_i) / (M~ sum_{i<=M} K(d_i)).
double is_refresh_weight(const Particle& particle, std::span<const double> fresh_dists, double lambda,
                         KernelKind kernel = KernelKind::kExponential);

struct MDecision {
  std::size_t replicates;
  bool saturated = false;  ///< doubling was called for but would exceed M_max
};

/// 2M when the acceptance rate falls below `target` and 2M <= M_max; M otherwise.
MDecision adapt_m(double acceptance_rate, std::size_t m, double target, std::size_t m_max);

}  // namespace abcpac
