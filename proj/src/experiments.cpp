#include "abcpac/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "abcpac/errors.hpp"
#include "abcpac/numeric.hpp"
#include "abcpac/trace_io.hpp"

namespace abcpac {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr double kHistLo = -5.0;
constexpr double kHistHi = 5.0;
constexpr std::size_t kHistBins = 101;
/// Temperature cap for uniform-kernel baselines, which stop on the simulation budget.
constexpr double kUniformLambdaCap = 1e9;

double normal_cdf(double x, double mu, double sd) { return 0.5 * std::erfc(-(x - mu) / (sd * std::numbers::sqrt2)); }

double normal_pdf(double x, double mu, double sd) {
  const double z = (x - mu) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

double mixture_cdf(const TruthGenerator& t, double x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < t.weights.size(); ++k) acc += t.weights[k] * normal_cdf(x, t.means[k], t.sds[k]);
  return acc;
}

double mixture_pdf(const TruthGenerator& t, double x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < t.weights.size(); ++k) acc += t.weights[k] * normal_pdf(x, t.means[k], t.sds[k]);
  return acc;
}

RunConfig with_seed(const RunConfig& base, std::uint64_t seed) {
  RunConfig c = base;
  c.seed = seed;
  c.smc.seed = seed;
  return c;
}

RunConfig uniform_baseline(const RunConfig& base, std::uint64_t budget) {
  RunConfig c = base;
  c.smc.kernel = KernelKind::kUniform;
  c.smc.adaptive_lambda = false;
  c.smc.lambda_target = kUniformLambdaCap;
  c.smc.lambda_max.reset();
  c.smc.simulation_budget = budget;
  return c;
}

std::string seed_dir(const std::string& out_dir, std::uint64_t seed) {
  return (fs::path(out_dir) / ("seed_" + std::to_string(seed))).string();
}

double mean_squared_error(const Vector& estimate, const Vector& truth) {
  return (estimate - truth).squaredNorm() / static_cast<double>(truth.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const auto mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

/// Weighted histogram of posterior-predictive observations: each particle simulates one
/// dataset of the observed size, clamped to the histogram range.
std::vector<double> predictive_histogram(const ParticleSystem& system, const GenerativeModel& model, std::size_t n,
                                         std::uint64_t seed) {
  const auto w = system.normalized_weights();
  std::vector<double> mass(kHistBins, 0.0);
  const double width = (kHistHi - kHistLo) / static_cast<double>(kHistBins);
  Dataset buffer;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    Rng rng = derive_stream(seed, StreamTag::kPredictive, 0, i);
    model.simulate_into(system.particles[i].theta, n, rng, buffer);
    for (double x : buffer) {
      const double c = std::clamp(x, kHistLo, kHistHi);
      auto bin = static_cast<std::size_t>(std::floor((c - kHistLo) / width));
      bin = std::min(bin, kHistBins - 1);
      mass[bin] += w[i] / static_cast<double>(n);
    }
  }
  for (auto& m : mass) m /= width;
  return mass;
}

std::vector<double> data_histogram(std::span<const double> data) {
  std::vector<double> mass(kHistBins, 0.0);
  const double width = (kHistHi - kHistLo) / static_cast<double>(kHistBins);
  for (double x : data) {
    const double c = std::clamp(x, kHistLo, kHistHi);
    auto bin = std::min(static_cast<std::size_t>(std::floor((c - kHistLo) / width)), kHistBins - 1);
    mass[bin] += 1.0 / static_cast<double>(data.size());
  }
  for (auto& m : mass) m /= width;
  return mass;
}

class CsvFile {
 public:
  CsvFile(const std::string& path, const std::string& header) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
    out_ << header << '\n';
  }
  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(fields), first = false), ...);
    out_ << '\n';
  }
  const std::string& path() const { return path_; }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  template <typename I>
    requires std::is_integral_v<I>
  static std::string cell(I v) { return std::to_string(v); }

  std::string path_;
  std::ofstream out_;
};

std::vector<std::string> run_exp1(const RunConfig& base, const std::vector<std::uint64_t>& seeds,
                                  const std::string& out_dir) {
  RunConfig ref = with_seed(base, splitmix64(base.seed ^ 0x7265666572656e63ULL));
  ref.smc.particles = base.smc.particles * 10;
  const auto reference = execute_run(ref, base.seed);
  write_run_artifacts((fs::path(out_dir) / "reference").string(), ref, reference);
  const Vector ref_mean = weighted_theta_moments(reference.final_system).mean;

  CsvFile errors((fs::path(out_dir) / "exp1_posterior_mean_errors.csv").string(),
                 "seed,kernel,parameter,estimate,reference,error,simulator_calls");
  CsvFile accept((fs::path(out_dir) / "exp1_acceptance.csv").string(), "seed,policy,step,lambda,accept_rate,M");
  for (auto s : seeds) {
    const auto dir = seed_dir(out_dir, s);
    const RunConfig expo = with_seed(base, s);
    const auto run_exp = execute_run(expo, base.seed);
    write_run_artifacts((fs::path(dir) / "exponential").string(), expo, run_exp);

    const RunConfig unif = uniform_baseline(expo, run_exp.smc.simulator_calls);
    const auto run_unif = execute_run(unif, base.seed);
    write_run_artifacts((fs::path(dir) / "uniform").string(), unif, run_unif);

    for (const auto& [label, outcome] : {std::pair<std::string, const RunOutcome*>{"exponential", &run_exp},
                                         std::pair<std::string, const RunOutcome*>{"uniform", &run_unif}}) {
      const Vector mean = weighted_theta_moments(outcome->final_system).mean;
      for (Eigen::Index j = 0; j < mean.size(); ++j) {
        errors.row(s, label, static_cast<std::size_t>(j + 1), mean[j], ref_mean[j], mean[j] - ref_mean[j],
                   outcome->smc.simulator_calls);
      }
    }

    RunConfig fixed = expo;
    fixed.smc.m_policy = MPolicy::kFixed;
    const auto run_fixed = execute_run(fixed, base.seed);
    write_run_artifacts((fs::path(dir) / "fixed_m").string(), fixed, run_fixed);
    for (const auto& [label, outcome] : {std::pair<std::string, const RunOutcome*>{to_string(expo.smc.m_policy), &run_exp},
                                         std::pair<std::string, const RunOutcome*>{"fixed", &run_fixed}}) {
      for (const auto& st : outcome->smc.trace.steps) {
        accept.row(s, label, st.step, st.lambda, st.accept_rate, st.replicates);
      }
    }
  }
  return {errors.path(), accept.path()};
}

std::vector<std::string> run_exp2(const RunConfig& base, const std::vector<std::uint64_t>& seeds,
                                  const std::string& out_dir, const std::vector<std::size_t>& n_grid) {
  CsvFile mse((fs::path(out_dir) / "exp2_mse.csv").string(), "n,seed,estimator,lambda,mse,simulator_calls");
  CsvFile summary((fs::path(out_dir) / "exp2_mse_summary.csv").string(), "n,estimator,median_mse,max_mse");
  CsvFile bound((fs::path(out_dir) / "exp2_bound.csv").string(),
                "n,seed,step,lambda,log_z,bound,neg_log_z_over_lambda,f_over_lambda,log_inv_eps_over_lambda");
  const std::vector<std::string> estimators{"fixed", "adaptive", "uniform"};
  for (auto n : n_grid) {
    std::vector<std::vector<double>> per_estimator(estimators.size());
    for (auto s : seeds) {
      RunConfig cfg = with_seed(base, s);
      cfg.data.truth.n = n;
      cfg.smc.adaptive_lambda = false;
      const Vector truth = expected_statistic(cfg.summary, cfg.data.truth);
      const auto dir = (fs::path(out_dir) / ("n_" + std::to_string(n)) / ("seed_" + std::to_string(s))).string();

      const auto fixed = execute_run(cfg, s);
      write_run_artifacts((fs::path(dir) / "fixed").string(), cfg, fixed);

      RunConfig ada = cfg;
      ada.smc.adaptive_lambda = true;
      ada.smc.lambda_max = cfg.smc.effective_lambda_max();
      const auto adaptive = execute_run(ada, s);
      write_run_artifacts((fs::path(dir) / "adaptive").string(), ada, adaptive);

      const RunConfig unif_cfg = uniform_baseline(cfg, fixed.smc.simulator_calls);
      const auto unif = execute_run(unif_cfg, s);
      write_run_artifacts((fs::path(dir) / "uniform").string(), unif_cfg, unif);

      const RunOutcome* outcomes[] = {&fixed, &adaptive, &unif};
      const KernelKind kernels[] = {KernelKind::kExponential, KernelKind::kExponential, KernelKind::kUniform};
      for (std::size_t e = 0; e < estimators.size(); ++e) {
        const Vector est = estimate_statistic_mean(outcomes[e]->final_system, kernels[e]);
        const double err = mean_squared_error(est, truth);
        per_estimator[e].push_back(err);
        mse.row(n, s, estimators[e], outcomes[e]->final_system.lambda, err, outcomes[e]->smc.simulator_calls);
      }

      const auto constants = derive_constants(ada);
      for (const auto& st : adaptive.smc.trace.steps) {
        const auto r = empirical_bound(st.log_z, st.lambda, constants);
        bound.row(n, s, st.step, st.lambda, st.log_z, r.value, r.components[0].value, r.components[1].value,
                  r.components[2].value);
      }
    }
    for (std::size_t e = 0; e < estimators.size(); ++e) {
      const auto& v = per_estimator[e];
      summary.row(n, estimators[e], median(v), v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()));
    }
  }
  return {mse.path(), summary.path(), bound.path()};
}

std::vector<std::string> run_exp3(const RunConfig& base, const std::vector<std::uint64_t>& seeds,
                                  const std::string& out_dir) {
  CsvFile stats((fs::path(out_dir) / "exp3_stat_errors.csv").string(),
                "seed,estimator,index,threshold,estimate,truth,abs_error");
  CsvFile maxerr((fs::path(out_dir) / "exp3_max_errors.csv").string(), "seed,estimator,max_error,simulator_calls");
  CsvFile hist((fs::path(out_dir) / "exp3_predictive.csv").string(), "seed,estimator,bin,lo,hi,density");
  const Vector truth = expected_statistic(base.summary, base.data.truth);
  const auto model = build_model(base.model);
  const double width = (kHistHi - kHistLo) / static_cast<double>(kHistBins);
  bool observed_written = false;
  for (auto s : seeds) {
    const auto dir = seed_dir(out_dir, s);
    const RunConfig expo = with_seed(base, s);
    const auto run_exp = execute_run(expo, base.seed);
    write_run_artifacts((fs::path(dir) / "exponential").string(), expo, run_exp);
    const RunConfig unif_cfg = uniform_baseline(expo, run_exp.smc.simulator_calls);
    const auto run_unif = execute_run(unif_cfg, base.seed);
    write_run_artifacts((fs::path(dir) / "uniform").string(), unif_cfg, run_unif);

    if (!observed_written) {
      const auto h = data_histogram(run_exp.observations);
      for (std::size_t b = 0; b < kHistBins; ++b) {
        hist.row(base.seed, "observed", b, kHistLo + width * static_cast<double>(b),
                 kHistLo + width * static_cast<double>(b + 1), h[b]);
      }
      observed_written = true;
    }
    for (const auto& [label, outcome, kernel] :
         {std::tuple<std::string, const RunOutcome*, KernelKind>{"exponential", &run_exp, KernelKind::kExponential},
          std::tuple<std::string, const RunOutcome*, KernelKind>{"uniform", &run_unif, KernelKind::kUniform}}) {
      const Vector est = estimate_statistic_mean(outcome->final_system, kernel);
      double worst = 0.0;
      for (Eigen::Index j = 0; j < est.size(); ++j) {
        const double err = std::abs(est[j] - truth[j]);
        worst = std::max(worst, err);
        const double t = base.summary.kind == SummarySpec::Kind::kIndicatorGrid
                             ? base.summary.thresholds[static_cast<std::size_t>(j)]
                             : std::numeric_limits<double>::quiet_NaN();
        stats.row(s, label, static_cast<std::size_t>(j + 1), t, est[j], truth[j], err);
      }
      maxerr.row(s, label, worst, outcome->smc.simulator_calls);
      const auto h = predictive_histogram(outcome->final_system, *model, run_exp.observations.size(), s);
      for (std::size_t b = 0; b < kHistBins; ++b) {
        hist.row(s, label, b, kHistLo + width * static_cast<double>(b), kHistLo + width * static_cast<double>(b + 1),
                 h[b]);
      }
    }
  }
  return {stats.path(), maxerr.path(), hist.path()};
}

std::vector<std::string> run_toy_discrete(const RunConfig& base, const std::vector<std::uint64_t>& seeds,
                                          const std::string& out_dir) {
  CsvFile tv((fs::path(out_dir) / "toy_discrete_tv.csv").string(), "seed,tv,log_z_hat,log_z_exact");
  const auto model = build_model(base.model);
  const auto& toy = dynamic_cast<const DiscreteToyModel&>(*model);
  for (auto s : seeds) {
    const RunConfig cfg = with_seed(base, s);
    const auto outcome = execute_run(cfg, base.seed);
    write_run_artifacts(seed_dir(out_dir, s), cfg, outcome);
    const auto exact = enumerate_discrete_posterior(toy, cfg.summary, cfg.distance, outcome.observations,
                                                    outcome.final_system.lambda, cfg.smc.kernel);
    tv.row(s, outcome.tv_to_enumerated.value_or(std::numeric_limits<double>::quiet_NaN()),
           outcome.final_system.log_z, exact.log_z);
  }
  return {tv.path()};
}

std::vector<std::string> run_toy_quadrature(const RunConfig& base, const std::vector<std::uint64_t>& seeds,
                                            const std::string& out_dir) {
  CsvFile ladder((fs::path(out_dir) / "toy_quadrature_ladder.csv").string(), "seed,step,lambda,log_z,theta_mean_1");
  for (auto s : seeds) {
    const RunConfig cfg = with_seed(base, s);
    const auto outcome = execute_run(cfg, base.seed);
    write_run_artifacts(seed_dir(out_dir, s), cfg, outcome);
    for (const auto& st : outcome.smc.trace.steps) ladder.row(s, st.step, st.lambda, st.log_z, st.theta_mean[0]);
  }
  return {ladder.path()};
}

}  // namespace

DiscretePosterior enumerate_discrete_posterior(const DiscreteToyModel& model, const SummarySpec& summary,
                                               const DistanceSpec& distance, std::span<const double> observations,
                                               double lambda, KernelKind kernel) {
  const Vector observed = summarize(summary, observations);
  std::vector<double> kernel_at(model.datasets().size());
  for (std::size_t j = 0; j < kernel_at.size(); ++j) {
    const double d = abcpac::distance(distance, summarize(summary, model.datasets()[j]), observed);
    kernel_at[j] = std::exp(log_kernel(kernel, lambda, d));
  }
  DiscretePosterior out;
  out.probabilities.resize(model.atoms().size());
  double z = 0.0;
  for (std::size_t a = 0; a < model.atoms().size(); ++a) {
    double acc = 0.0;
    for (std::size_t j = 0; j < kernel_at.size(); ++j) acc += model.likelihood()[a][j] * kernel_at[j];
    out.probabilities[a] = model.prior_weights()[a] * acc;
    z += out.probabilities[a];
  }
  if (!(z > 0.0)) throw DegenerateSystemError("pseudo-posterior has zero mass at this temperature");
  for (auto& p : out.probabilities) p /= z;
  out.log_z = std::log(z);
  return out;
}

std::vector<double> atom_frequencies(const ParticleSystem& system, const DiscreteToyModel& model) {
  const auto w = system.normalized_weights();
  std::vector<double> freq(model.atoms().size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto idx = model.atom_index(system.particles[i].theta);
    if (!idx) throw InvalidParameterError("particle is not on an atom");
    freq[*idx] += w[i];
  }
  return freq;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInputError("distributions differ in support size");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return 0.5 * acc;
}

Vector expected_statistic(const SummarySpec& summary, const TruthGenerator& truth) {
  if (summary.kind == SummarySpec::Kind::kIdentity) {
    throw InvalidInputError("the identity statistic has no per-observation feature map");
  }
  truth.validate();
  // the truth's own truncation acts before the statistic's clamp
  auto clamp_interval = summary.clamp;
  if (truth.truncation) {
    clamp_interval = clamp_interval ? std::make_pair(std::max(clamp_interval->first, truth.truncation->first),
                                                     std::min(clamp_interval->second, truth.truncation->second))
                                    : truth.truncation;
  }
  double lo = 0.0, hi = 0.0;
  if (clamp_interval) {
    lo = clamp_interval->first;
    hi = clamp_interval->second;
  } else {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t k = 0; k < truth.means.size(); ++k) {
      lo = std::min(lo, truth.means[k] - 12.0 * truth.sds[k]);
      hi = std::max(hi, truth.means[k] + 12.0 * truth.sds[k]);
    }
  }
  std::vector<double> cuts{lo, hi};
  if (summary.kind == SummarySpec::Kind::kMomentsAndTails) {
    cuts.push_back(-1.0);
    cuts.push_back(2.0);
  }
  if (summary.kind == SummarySpec::Kind::kIndicatorGrid) cuts.insert(cuts.end(), summary.thresholds.begin(), summary.thresholds.end());
  std::erase_if(cuts, [&](double c) { return c < lo || c > hi; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const std::size_t m = summary.dim(1);
  Vector acc = Vector::Zero(static_cast<Eigen::Index>(m));
  Vector h;
  auto feature = [&](double x) {
    const double one[] = {x};
    summarize_into(summary, one, h);
    return h;
  };
  constexpr std::size_t kPanels = 2000;  // even
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c];
    const double b = cuts[c + 1];
    const double step = (b - a) / static_cast<double>(kPanels);
    // interior points only so that indicator features take their open-interval value
    for (std::size_t i = 0; i <= kPanels; ++i) {
      double x = a + step * static_cast<double>(i);
      const double coef = (i == 0 || i == kPanels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      const double xe = i == 0 ? a + 1e-12 * (b - a) : i == kPanels ? b - 1e-12 * (b - a) : x;
      acc += coef * step / 3.0 * mixture_pdf(truth, x) * feature(xe);
    }
  }
  if (clamp_interval) {
    acc += mixture_cdf(truth, lo) * feature(lo);
    acc += (1.0 - mixture_cdf(truth, hi)) * feature(hi);
  }
  return acc;
}

RunOutcome execute_run(const RunConfig& config, std::optional<std::uint64_t> data_seed) {
  config.validate();
  const auto model = build_model(config.model);
  RunOutcome out;
  out.observations = build_observations(config.data, data_seed.value_or(config.seed));
  SmcConfig smc = config.smc;
  smc.seed = config.seed;
  const auto start = std::chrono::steady_clock::now();
  out.smc = run_smc(smc, *model, config.summary, config.distance, out.observations);
  out.final_system = out.smc.system;
  if (smc.adaptive_lambda && !out.smc.trace.empty()) {
    const auto constants = derive_constants(config);
    const auto grid = default_beta_grid(out.smc.trace, constants, config.bounds.beta_grid_size);
    out.selection = adaptive_select_lambda(out.smc.trace, constants, grid);
    const auto& snap = nearest_snapshot(out.smc.snapshots, out.selection->lambda_hat);
    out.final_system = reweight_snapshot(snap, out.smc.system.observed_stats, out.selection->lambda_hat, smc.kernel);
    out.final_system.log_z = LogZInterpolant::from_trace(out.smc.trace)(out.selection->lambda_hat);
  }
  if (const auto* toy = dynamic_cast<const DiscreteToyModel*>(model.get())) {
    const auto exact = enumerate_discrete_posterior(*toy, config.summary, config.distance, out.observations,
                                                    out.final_system.lambda, smc.kernel);
    out.tv_to_enumerated = total_variation(atom_frequencies(out.final_system, *toy), exact.probabilities);
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string run_summary_json(const RunConfig& config, const RunOutcome& outcome) {
  Json j;
  j["name"] = config.name;
  j["seed"] = config.seed;
  j["n"] = outcome.observations.size();
  j["particles"] = outcome.final_system.size();
  j["kernel"] = to_string(config.smc.kernel);
  j["steps"] = outcome.smc.trace.steps.size();
  j["lambda"] = outcome.final_system.lambda;
  j["log_z"] = outcome.final_system.log_z;
  j["replicates"] = outcome.final_system.replicates;
  if (!outcome.final_system.particles.empty()) {
    const auto moments = weighted_theta_moments(outcome.final_system);
    j["theta_mean"] = std::vector<double>(moments.mean.data(), moments.mean.data() + moments.mean.size());
    j["theta_sd"] = std::vector<double>(moments.sd.data(), moments.sd.data() + moments.sd.size());
  }
  j["simulator_calls"] = outcome.smc.simulator_calls;
  j["budget_exhausted"] = outcome.smc.budget_exhausted;
  if (outcome.selection) {
    j["lambda_hat"] = outcome.selection->lambda_hat;
    j["beta_hat"] = outcome.selection->beta_hat;
    j["selection_on_boundary"] = outcome.selection->boundary;
    j["adaptive_objective"] = outcome.selection->report.value;
  } else {
    j["lambda_hat"] = nullptr;
  }
  if (outcome.tv_to_enumerated) j["tv_to_enumerated"] = *outcome.tv_to_enumerated;
  j["wall_seconds"] = outcome.wall_seconds;
  return j.dump(2) + "\n";
}

void write_run_artifacts(const std::string& out_dir, const RunConfig& config, const RunOutcome& outcome) {
  fs::create_directories(out_dir);
  const auto dim = build_model(config.model)->param_dim();
  {
    std::ostringstream ss;
    write_trace_csv(ss, outcome.smc.trace, dim);
    write_text_file((fs::path(out_dir) / "trace.csv").string(), ss.str());
  }
  {
    std::ostringstream ss;
    write_snapshots_csv(ss, outcome.smc.snapshots, dim);
    write_text_file((fs::path(out_dir) / "snapshots.csv").string(), ss.str());
  }
  write_text_file((fs::path(out_dir) / "summary.json").string(), run_summary_json(config, outcome));
}

std::vector<std::string> run_experiment(const std::string& name, const RunConfig& base,
                                        const std::vector<std::uint64_t>& seeds, const std::string& out_dir,
                                        const std::vector<std::size_t>& n_grid) {
  base.validate();
  if (seeds.empty()) throw InvalidConfigError("experiment needs at least one seed", "seeds");
  fs::create_directories(out_dir);
  if (name == "exp1") return run_exp1(base, seeds, out_dir);
  if (name == "exp2") return run_exp2(base, seeds, out_dir, n_grid);
  if (name == "exp3") return run_exp3(base, seeds, out_dir);
  if (name == "toy-discrete") return run_toy_discrete(base, seeds, out_dir);
  if (name == "toy-quadrature") return run_toy_quadrature(base, seeds, out_dir);
  throw InvalidConfigError("unknown experiment '" + name + "'", "experiment");
}

}  // namespace abcpac
