#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "abcpac/errors.hpp"
#include "abcpac/madapt.hpp"
#include "abcpac/mcmc.hpp"
#include "abcpac/particles.hpp"

namespace abcpac {

/// (sum w)^2 / sum w^2 from log weights. Throws DegenerateSystemError if all are -inf.
double ess(std::span<const double> log_weights);

/// log sum_i K_new(d_i) - log sum_i K_old(d_i). Returns -inf when the new sum vanishes
/// and the particle already carries zero weight at the old temperature.
double incremental_log_weight(const Particle& particle, double lambda_new, double lambda_old,
                              KernelKind kernel = KernelKind::kExponential);

struct BisectionOptions {
  double tol = 1e-4;  ///< |ESS - tau N| <= tol N
  std::size_t max_iterations = 100;
  /// Upper end of the initial bracket; expanded to lambda_max if ESS is still above target.
  std::optional<double> bracket_hint;
  KernelKind kernel = KernelKind::kExponential;
};

/// ESS of the system's weights after moving them to candidate temperature `lambda`.
double ess_at(const ParticleSystem& system, double lambda, KernelKind kernel = KernelKind::kExponential);

/// Solves ESS(lambda) = tau N on (system.lambda, lambda_max] by bisection, or returns
/// lambda_max when ESS(lambda_max) >= tau N. Throws LadderStallError when the
/// current ESS is already below tau N.
double find_next_lambda(const ParticleSystem& system, double tau, double lambda_max,
                        const BisectionOptions& options = {});

/// Least-squares fit of log lambda_t on t over the positive entries of `history`,
/// extrapolated one step past the last t. One usable point or a degenerate fit
/// falls back to 2 * lambda_last. With `lambda_max` the result is clamped to
/// [lambda_last, lambda_max].
double predict_next_lambda(std::span<const std::pair<double, double>> history,
                           std::optional<double> lambda_max = std::nullopt);

/// Single-uniform stratified resampling: positions (u + k)/N against the cumulative
/// weights. Returns zero-based ancestor indices in increasing order.
std::vector<std::size_t> systematic_resample(std::span<const double> weights, double u);

/// log Z_new = log Z + log sum_i W_i exp(incremental_log_weight_i) with W the current
/// normalized weights.
double update_log_z(const ParticleSystem& system, double lambda_new,
                    KernelKind kernel = KernelKind::kExponential);

// ---------------------------------------------------------------------------

struct SmcConfig {
  std::size_t particles = 1000;
  double tau = 0.9;
  double lambda_target = 60.0;
  std::optional<double> lambda_max;  ///< default 10 * lambda_target in fixed mode
  bool adaptive_lambda = false;      ///< run up to lambda_max; the temperature is chosen afterwards
  std::size_t mcmc_steps = 3;
  std::optional<double> rw_scale;  ///< default 2.38^2 / d
  std::size_t initial_replicates = 1;
  MPolicy m_policy = MPolicy::kGibbs;
  double acceptance_target = 0.10;
  std::size_t max_replicates = 128;
  KernelKind kernel = KernelKind::kExponential;
  double bisection_tol = 1e-4;
  std::size_t bisection_max_iterations = 100;
  std::size_t snapshot_limit = 200;
  /// Keep replicate statistics and distances in snapshots (needed to reweight a
  /// snapshot to another temperature). Defaults to on in adaptive mode.
  std::optional<bool> full_snapshots;
  std::uint64_t simulation_budget = 0;  ///< stop once this many datasets were simulated; 0 = no limit
  std::uint64_t seed = 0;
  bool fail_on_degeneracy = true;

  void validate() const;
  double effective_lambda_max() const;
  /// Temperature at which the ladder stops.
  double end_lambda() const;
  bool keeps_full_snapshots() const { return full_snapshots.value_or(adaptive_lambda); }
};

struct LadderStep {
  std::size_t step = 0;
  double lambda = 0.0;
  double ess = 0.0;  ///< at selection time, before resampling
  double accept_rate = 1.0;
  bool accept_undefined = false;
  std::size_t replicates = 1;  ///< M used by this step's moves
  double log_z = 0.0;
  Vector theta_mean;
  Vector theta_sd;
  double ess_after_refresh = std::numeric_limits<double>::quiet_NaN();  ///< importance-sampling change of M only
  bool m_saturated = false;
  std::uint64_t simulator_calls = 0;  ///< cumulative
};

struct LadderTrace {
  std::vector<LadderStep> steps;

  bool empty() const { return steps.empty(); }
  /// (lambda_t, log Z_t) including the (0, 0) origin.
  std::vector<std::pair<double, double>> log_z_knots() const;
};

/// Population at one ladder step. Replicate data is present only for full snapshots.
struct Snapshot {
  std::size_t step = 0;
  double lambda = 0.0;
  std::size_t replicates = 1;
  std::vector<Particle> particles;
  bool full = false;
};

/// Moves a full snapshot to temperature `lambda` by incremental weights (either
/// direction) and returns it as a particle system.
ParticleSystem reweight_snapshot(const Snapshot& snapshot, const Vector& observed_stats, double lambda,
                                 KernelKind kernel = KernelKind::kExponential);
/// Snapshot whose temperature is closest to `lambda`.
const Snapshot& nearest_snapshot(std::span<const Snapshot> snapshots, double lambda);

struct SmcHooks {
  std::function<void(const ParticleSystem&, const LadderStep&)> on_step;
};

struct SmcResult {
  ParticleSystem system;
  LadderTrace trace;
  std::vector<Snapshot> snapshots;
  std::uint64_t simulator_calls = 0;
  bool budget_exhausted = false;
};

/// Degeneracy raised from inside run_smc, carrying the ladder recorded so far.
class DegenerateRunError : public DegenerateSystemError {
 public:
  DegenerateRunError(const std::string& what, LadderTrace trace)
      : DegenerateSystemError(what), trace_(std::move(trace)) {}
  const LadderTrace& trace() const noexcept { return trace_; }

 private:
  LadderTrace trace_;
};

/// Adaptive SMC sampler for the exponential-kernel ABC pseudo-posterior:
/// choose lambda_t by ESS bisection, reweight, resample, rejuvenate with the
/// pseudo-marginal kernel, then adapt M.
SmcResult run_smc(const SmcConfig& config, const GenerativeModel& model, const SummarySpec& summary,
                  const DistanceSpec& distance, std::span<const double> observations, const SmcHooks& hooks = {});

}  // namespace abcpac
