#include "abcpac/smc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "abcpac/errors.hpp"
#include "abcpac/numeric.hpp"

namespace abcpac {
namespace {

/// log sum_k K_lambda(d_k) for every particle.
std::vector<double> kernel_sums(const ParticleSystem& system, double lambda, KernelKind kernel) {
  std::vector<double> out(system.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = log_kernel_sum(kernel, system.particles[i].dists, lambda);
  return out;
}

double ess_from_increments(const ParticleSystem& system, std::span<const double> base, double lambda,
                           KernelKind kernel, std::vector<double>& scratch) {
  scratch.resize(system.size());
  for (std::size_t i = 0; i < scratch.size(); ++i) {
    const auto& p = system.particles[i];
    if (p.log_weight == kNegInf || base[i] == kNegInf) {
      scratch[i] = kNegInf;
      continue;
    }
    scratch[i] = p.log_weight + (log_kernel_sum(kernel, p.dists, lambda) - base[i]);
  }
  bool any = false;
  for (double v : scratch) any = any || v != kNegInf;
  return any ? ess(scratch) : 0.0;
}

void resample_in_place(ParticleSystem& system, double u) {
  const auto w = system.normalized_weights();
  const auto ancestors = systematic_resample(w, u);
  std::vector<Particle> next;
  next.reserve(ancestors.size());
  for (auto a : ancestors) next.push_back(system.particles[a]);
  const double lw = -std::log(static_cast<double>(next.size()));
  for (auto& p : next) p.log_weight = lw;
  system.particles = std::move(next);
}

double uniform01(Rng rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

void push_snapshot(std::vector<Snapshot>& snaps, const ParticleSystem& system, std::size_t step, bool full,
                   std::size_t limit) {
  Snapshot s;
  s.step = step;
  s.lambda = system.lambda;
  s.replicates = system.replicates;
  s.full = full;
  s.particles.reserve(system.size());
  for (const auto& p : system.particles) {
    Particle q;
    q.theta = p.theta;
    q.log_weight = p.log_weight;
    if (full) {
      q.stats = p.stats;
      q.dists = p.dists;
    }
    s.particles.push_back(std::move(q));
  }
  snaps.push_back(std::move(s));
  if (limit > 0 && snaps.size() > limit) {
    // keep every other snapshot counting back from the newest
    std::vector<Snapshot> kept;
    for (std::size_t i = snaps.size(); i >= 1; i -= std::min<std::size_t>(2, i)) {
      kept.push_back(std::move(snaps[i - 1]));
      if (i < 2) break;
    }
    std::reverse(kept.begin(), kept.end());
    snaps = std::move(kept);
  }
}

}  // namespace

double ess(std::span<const double> log_weights) {
  if (log_weights.empty()) throw DegenerateSystemError("ESS of an empty system");
  double hi = kNegInf;
  for (double v : log_weights) hi = std::max(hi, v);
  if (hi == kNegInf) throw DegenerateSystemError("every particle weight is zero");
  double s1 = 0.0, s2 = 0.0;
  for (double v : log_weights) {
    const double w = std::exp(v - hi);
    s1 += w;
    s2 += w * w;
  }
  return s1 * s1 / s2;
}

double incremental_log_weight(const Particle& particle, double lambda_new, double lambda_old, KernelKind kernel) {
  if (lambda_new == lambda_old) return 0.0;
  const double old_sum = log_kernel_sum(kernel, particle.dists, lambda_old);
  const double new_sum = log_kernel_sum(kernel, particle.dists, lambda_new);
  if (old_sum == kNegInf) return kNegInf;
  return new_sum - old_sum;
}

double ess_at(const ParticleSystem& system, double lambda, KernelKind kernel) {
  const auto base = kernel_sums(system, system.lambda, kernel);
  std::vector<double> scratch;
  return ess_from_increments(system, base, lambda, kernel, scratch);
}

double find_next_lambda(const ParticleSystem& system, double tau, double lambda_max, const BisectionOptions& options) {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidInputError("tau must lie in (0,1)");
  if (!(lambda_max > system.lambda) || !std::isfinite(lambda_max)) {
    throw InvalidInputError("lambda_max must be finite and above the current temperature");
  }
  const double n = static_cast<double>(system.size());
  const double target = tau * n;
  const auto base = kernel_sums(system, system.lambda, options.kernel);
  std::vector<double> scratch;
  auto ess_of = [&](double lambda) { return ess_from_increments(system, base, lambda, options.kernel, scratch); };

  const double current = ess(system.log_weights());
  if (current < target) {
    throw LadderStallError("ESS " + std::to_string(current) + " is already below the target " +
                           std::to_string(target) + "; lower tau");
  }
  if (ess_of(lambda_max) >= target) return lambda_max;

  double lo = system.lambda;
  double hi = lambda_max;
  if (options.bracket_hint && *options.bracket_hint > lo && *options.bracket_hint < lambda_max) {
    const double h = *options.bracket_hint;
    if (ess_of(h) < target) {
      hi = h;
    } else {
      lo = h;
    }
  }
  // Bisect until the bracket collapses; the returned end point is the one
  // closest to the target from above whenever it lies within tolerance.
  double best = hi;
  double best_gap = std::abs(ess_of(hi) - target);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double e = ess_of(mid);
    const double gap = std::abs(e - target);
    if (gap < best_gap || (gap == best_gap && mid < best)) {
      best = mid;
      best_gap = gap;
    }
    if (e >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
  }
  if (best_gap <= options.tol * n) return best;
  // Plateaus (uniform kernel) can leave no point within tolerance: return the
  // smallest bracket point that still moves the ladder.
  return lo > system.lambda ? lo : hi;
}

double predict_next_lambda(std::span<const std::pair<double, double>> history, std::optional<double> lambda_max) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, lam] : history) {
    if (lam > 0.0 && std::isfinite(lam)) pts.emplace_back(t, std::log(lam));
  }
  if (history.empty()) throw InvalidInputError("prediction needs at least one ladder point");
  const double last = history.back().second;
  double prediction = 2.0 * last;
  if (pts.size() >= 2) {
    double mt = 0, my = 0;
    for (const auto& [t, y] : pts) {
      mt += t;
      my += y;
    }
    mt /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double stt = 0, sty = 0;
    for (const auto& [t, y] : pts) {
      stt += (t - mt) * (t - mt);
      sty += (t - mt) * (y - my);
    }
    if (stt > 0.0) {
      const double slope = sty / stt;
      const double next_t = history.back().first + 1.0;
      const double fitted = std::exp(my + slope * (next_t - mt));
      if (std::isfinite(fitted) && fitted > 0.0) prediction = fitted;
    }
  }
  if (lambda_max) prediction = std::clamp(prediction, last, std::max(last, *lambda_max));
  return prediction;
}

std::vector<std::size_t> systematic_resample(std::span<const double> weights, double u) {
  const std::size_t n = weights.size();
  if (n == 0) return {};
  if (!(u >= 0.0 && u < 1.0)) throw InvalidInputError("systematic resampling needs u in [0,1)");
  // cumulative weights scaled by N so that positions are u + k
  std::vector<double> cum(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += weights[j];
    cum[j] = acc;
  }
  const double scale = static_cast<double>(n) / acc;
  for (auto& c : cum) {
    c *= scale;
    const double r = std::round(c);
    if (std::abs(c - r) <= 1e-9 * static_cast<double>(n)) c = r;
  }
  cum.back() = static_cast<double>(n);

  std::vector<std::size_t> out(n);
  std::size_t m = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = u + static_cast<double>(k);
    while (m + 1 < n && cum[m] <= s) ++m;
    out[k] = m;
  }
  return out;
}

double update_log_z(const ParticleSystem& system, double lambda_new, KernelKind kernel) {
  if (lambda_new == system.lambda) return system.log_z;
  const auto w = system.normalized_weights();
  std::vector<double> terms(system.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms[i] = w[i] == 0.0 ? kNegInf
                           : std::log(w[i]) + incremental_log_weight(system.particles[i], lambda_new, system.lambda, kernel);
  }
  return system.log_z + log_sum_exp(terms);
}

// ---------------------------------------------------------------------------

void SmcConfig::validate() const {
  if (particles < 2) throw InvalidConfigError("smc.particles must be at least 2", "smc.particles");
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidConfigError("smc.tau must lie in (0,1)", "smc.tau");
  if (!(lambda_target >= 0.0) || !std::isfinite(lambda_target)) {
    throw InvalidConfigError("smc.lambda_target must be finite and non-negative", "smc.lambda_target");
  }
  if (adaptive_lambda && !lambda_max) {
    throw InvalidConfigError("adaptive mode needs smc.lambda_max", "smc.lambda_max");
  }
  if (lambda_max && (!(*lambda_max > 0.0) || !std::isfinite(*lambda_max))) {
    throw InvalidConfigError("smc.lambda_max must be finite and positive", "smc.lambda_max");
  }
  if (lambda_max && !adaptive_lambda && *lambda_max < lambda_target) {
    throw InvalidConfigError("smc.lambda_max must be at least smc.lambda_target", "smc.lambda_max");
  }
  if (rw_scale && !(*rw_scale > 0.0)) throw InvalidConfigError("smc.rw_scale must be positive", "smc.rw_scale");
  if (initial_replicates == 0) throw InvalidConfigError("smc.m_initial must be at least 1", "smc.m_initial");
  if (max_replicates < initial_replicates) {
    throw InvalidConfigError("smc.m_max must be at least smc.m_initial", "smc.m_max");
  }
  if (!(acceptance_target > 0.0 && acceptance_target < 1.0)) {
    throw InvalidConfigError("smc.acceptance_target must lie in (0,1)", "smc.acceptance_target");
  }
  if (!(bisection_tol > 0.0)) throw InvalidConfigError("smc.bisection_tol must be positive", "smc.bisection_tol");
}

double SmcConfig::effective_lambda_max() const { return lambda_max.value_or(10.0 * lambda_target); }

double SmcConfig::end_lambda() const { return adaptive_lambda ? effective_lambda_max() : lambda_target; }

std::vector<std::pair<double, double>> LadderTrace::log_z_knots() const {
  std::vector<std::pair<double, double>> knots{{0.0, 0.0}};
  for (const auto& s : steps) knots.emplace_back(s.lambda, s.log_z);
  return knots;
}

ParticleSystem reweight_snapshot(const Snapshot& snapshot, const Vector& observed_stats, double lambda,
                                 KernelKind kernel) {
  if (!snapshot.full) throw InvalidInputError("snapshot lacks replicate distances; enable full snapshots");
  ParticleSystem system;
  system.particles = snapshot.particles;
  system.lambda = snapshot.lambda;
  system.replicates = snapshot.replicates;
  system.observed_stats = observed_stats;
  for (auto& p : system.particles) {
    if (p.log_weight == kNegInf) continue;
    const double old_sum = log_kernel_sum(kernel, p.dists, snapshot.lambda);
    const double new_sum = log_kernel_sum(kernel, p.dists, lambda);
    p.log_weight = old_sum == kNegInf ? kNegInf : p.log_weight + (new_sum - old_sum);
  }
  system.lambda = lambda;
  system.normalize();
  return system;
}

const Snapshot& nearest_snapshot(std::span<const Snapshot> snapshots, double lambda) {
  if (snapshots.empty()) throw InvalidInputError("no snapshots recorded");
  const Snapshot* best = &snapshots.front();
  for (const auto& s : snapshots) {
    if (std::abs(s.lambda - lambda) < std::abs(best->lambda - lambda)) best = &s;
  }
  return *best;
}

SmcResult run_smc(const SmcConfig& config, const GenerativeModel& model, const SummarySpec& summary,
                  const DistanceSpec& distance, std::span<const double> observations, const SmcHooks& hooks) {
  config.validate();
  summary.validate();
  distance.validate();
  if (observations.empty()) throw InvalidInputError("no observations");

  SmcResult result;
  ParticleSystem& system = result.system;
  system.observed_stats = summarize(summary, observations);
  system.replicates = config.initial_replicates;
  const SimulationContext ctx{model, summary, distance, system.observed_stats, observations.size()};
  const std::size_t n_particles = config.particles;
  const double rw_scale = config.rw_scale.value_or(default_rw_scale(model.param_dim()));
  const bool full = config.keeps_full_snapshots();

  system.particles.resize(n_particles);
  {
    const auto count = static_cast<std::ptrdiff_t>(n_particles);
    const double lw = -std::log(static_cast<double>(n_particles));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      Rng rng = derive_stream(config.seed, StreamTag::kInit, 0, static_cast<std::uint64_t>(i));
      Particle& p = system.particles[static_cast<std::size_t>(i)];
      p.theta = model.sample_prior(rng);
      p.stats.resize(system.replicates);
      p.dists.resize(system.replicates);
      Dataset buffer;
      for (std::size_t k = 0; k < system.replicates; ++k) ctx.simulate_replicate(p.theta, rng, buffer, p.stats[k], p.dists[k]);
      p.log_weight = lw;
    }
  }
  result.simulator_calls = n_particles * system.replicates;

  const double end = config.end_lambda();
  const double cap = config.effective_lambda_max();
  std::vector<std::pair<double, double>> history;
  bool predict_bracket = false;
  std::size_t t = 0;

  while (system.lambda < end) {
    ++t;
    LadderStep row;
    row.step = t;

    // a. next temperature
    BisectionOptions bis;
    bis.tol = config.bisection_tol;
    bis.max_iterations = config.bisection_max_iterations;
    bis.kernel = config.kernel;
    if (predict_bracket && history.size() >= 1) bis.bracket_hint = 4.0 * predict_next_lambda(history, cap);
    double lambda = find_next_lambda(system, config.tau, std::max(cap, end), bis);
    lambda = std::min(lambda, end);

    // reweight and accumulate the normalizing constant
    system.log_z = update_log_z(system, lambda, config.kernel);
    for (auto& p : system.particles) p.log_weight += incremental_log_weight(p, lambda, system.lambda, config.kernel);
    system.lambda = lambda;
    row.ess = ess(system.log_weights());
    system.normalize();
    if (row.ess <= 1.0 + 1e-9 && config.fail_on_degeneracy && lambda < end) {
      throw DegenerateRunError("a single particle carries all the weight at lambda = " + std::to_string(lambda),
                               result.trace);
    }

    // b. resample
    resample_in_place(system, uniform01(derive_stream(config.seed, StreamTag::kResample, t, 0)));

    // c. pseudo-marginal moves
    const auto calibration = calibrate(system, rw_scale);
    const auto moved = rejuvenate(system, config.mcmc_steps, calibration, ctx, config.kernel, config.seed, t);
    result.simulator_calls += moved.simulator_calls;
    row.accept_rate = moved.acceptance_rate;
    row.accept_undefined = moved.undefined_rate;
    row.replicates = system.replicates;

    // e. change of M
    if (config.m_policy != MPolicy::kFixed) {
      const auto decision = adapt_m(moved.acceptance_rate, system.replicates, config.acceptance_target,
                                    config.max_replicates);
      row.m_saturated = decision.saturated;
      if (decision.replicates != system.replicates) {
        const std::size_t m_new = decision.replicates;
        const auto count = static_cast<std::ptrdiff_t>(system.size());
        if (config.m_policy == MPolicy::kGibbs) {
#pragma omp parallel for schedule(dynamic, 16)
          for (std::ptrdiff_t i = 0; i < count; ++i) {
            Rng rng = derive_stream(config.seed, StreamTag::kRefresh, t, static_cast<std::uint64_t>(i));
            gibbs_refresh(system.particles[static_cast<std::size_t>(i)], system.lambda, m_new, ctx, rng, config.kernel);
          }
          result.simulator_calls += system.size() * (m_new - 1);
        } else {
#pragma omp parallel for schedule(dynamic, 16)
          for (std::ptrdiff_t i = 0; i < count; ++i) {
            Rng rng = derive_stream(config.seed, StreamTag::kRefresh, t, static_cast<std::uint64_t>(i));
            Particle& p = system.particles[static_cast<std::size_t>(i)];
            std::vector<Vector> stats(m_new);
            std::vector<double> dists(m_new);
            Dataset buffer;
            for (std::size_t k = 0; k < m_new; ++k) ctx.simulate_replicate(p.theta, rng, buffer, stats[k], dists[k]);
            p.log_weight += is_refresh_weight(p, dists, system.lambda, config.kernel);
            p.stats = std::move(stats);
            p.dists = std::move(dists);
          }
          result.simulator_calls += system.size() * m_new;
          bool alive = false;
          for (const auto& p : system.particles) alive = alive || p.log_weight != kNegInf;
          row.ess_after_refresh = alive ? ess(system.log_weights()) : 0.0;
          if (row.ess_after_refresh <= 1.0 + 1e-9 && config.fail_on_degeneracy) {
            auto partial = result.trace;
            row.lambda = system.lambda;
            row.log_z = system.log_z;
            row.simulator_calls = result.simulator_calls;
            partial.steps.push_back(row);
            throw DegenerateRunError("importance-sampling change of M left a single particle", std::move(partial));
          }
          system.normalize();
          if (row.ess_after_refresh < config.tau * static_cast<double>(system.size())) {
            resample_in_place(system, uniform01(derive_stream(config.seed, StreamTag::kResample, t, 1)));
          }
        }
        system.replicates = m_new;
        predict_bracket = true;
      }
    }

    row.lambda = system.lambda;
    row.log_z = system.log_z;
    const auto moments = weighted_theta_moments(system);
    row.theta_mean = moments.mean;
    row.theta_sd = moments.sd;
    row.simulator_calls = result.simulator_calls;
    result.trace.steps.push_back(row);
    history.emplace_back(static_cast<double>(t), system.lambda);
    push_snapshot(result.snapshots, system, t, full, config.snapshot_limit);
    if (hooks.on_step) hooks.on_step(system, row);

    if (config.simulation_budget > 0 && result.simulator_calls >= config.simulation_budget) {
      result.budget_exhausted = true;
      break;
    }
  }
  return result;
}

}  // namespace abcpac
