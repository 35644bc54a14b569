#include "abcpac/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "abcpac/errors.hpp"

namespace abcpac {
namespace {

constexpr double kRowTolerance = 1e-12;

double normal_logpdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

std::vector<double> cumulative(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  std::partial_sum(w.begin(), w.end(), c.begin());
  if (!c.empty()) {
    const double total = c.back();
    for (auto& v : c) v /= total;
    c.back() = 1.0;
  }
  return c;
}

std::size_t draw_from_cdf(const std::vector<double>& cdf, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

void check_distribution(const std::vector<double>& w, const std::string& what) {
  double total = 0.0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidConfigError(what + " has a negative or non-finite entry");
    total += v;
  }
  if (std::abs(total - 1.0) > kRowTolerance) {
    std::ostringstream os;
    os << what << " sums to " << total << ", expected 1";
    throw InvalidConfigError(os.str());
  }
}

}  // namespace

void validate_theta(const GenerativeModel& model, const Vector& theta) {
  if (static_cast<std::size_t>(theta.size()) != model.param_dim()) {
    throw InvalidParameterError("parameter vector has dimension " + std::to_string(theta.size()) +
                                ", model expects " + std::to_string(model.param_dim()));
  }
  if (!theta.allFinite()) throw InvalidParameterError("parameter vector has a non-finite entry");
}

Dataset simulate_dataset(const GenerativeModel& model, const Vector& theta, std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidInputError("dataset size must be at least 1");
  validate_theta(model, theta);
  Dataset out;
  model.simulate_into(theta, n, rng, out);
  return out;
}

double prior_logpdf(const GenerativeModel& model, const Vector& theta) {
  return model.prior_logpdf(theta);
}

// ---------------------------------------------------------------------------

DiagonalGaussianPrior::DiagonalGaussianPrior(Vector mean, Vector sd) : mean_(std::move(mean)), sd_(std::move(sd)) {
  if (mean_.size() != sd_.size() || mean_.size() == 0) {
    throw InvalidConfigError("prior mean and sd must be non-empty and of equal length");
  }
  if (!mean_.allFinite() || !(sd_.array() > 0.0).all() || !sd_.allFinite()) {
    throw InvalidConfigError("prior sds must be finite and strictly positive");
  }
}

DiagonalGaussianPrior DiagonalGaussianPrior::isotropic(std::size_t dim, double variance) {
  return DiagonalGaussianPrior(Vector::Zero(static_cast<Eigen::Index>(dim)),
                               Vector::Constant(static_cast<Eigen::Index>(dim), std::sqrt(variance)));
}

Vector DiagonalGaussianPrior::sample(Rng& rng) const {
  std::normal_distribution<double> z(0.0, 1.0);
  Vector theta(mean_.size());
  for (Eigen::Index i = 0; i < mean_.size(); ++i) theta[i] = mean_[i] + sd_[i] * z(rng);
  return theta;
}

double DiagonalGaussianPrior::logpdf(const Vector& theta) const {
  if (theta.size() != mean_.size()) throw InvalidParameterError("prior evaluated at a vector of the wrong dimension");
  if (!theta.allFinite()) throw InvalidParameterError("prior evaluated at a non-finite parameter");
  double lp = 0.0;
  for (Eigen::Index i = 0; i < mean_.size(); ++i) lp += normal_logpdf(theta[i], mean_[i], sd_[i]);
  return lp;
}

// ---------------------------------------------------------------------------

MixtureModel::MixtureModel(double p, DiagonalGaussianPrior prior) : p_(p), prior_(std::move(prior)) {
  if (!(p_ > 0.0 && p_ < 1.0)) throw InvalidConfigError("mixture weight p must lie in (0,1)");
  if (prior_.dim() != 4) throw InvalidConfigError("mixture prior must be four-dimensional");
}

MixtureModel MixtureModel::with_default_prior(double p) {
  Vector mean = Vector::Zero(4);
  Vector sd(4);
  sd << 10.0, 1.0, 10.0, 1.0;
  return MixtureModel(p, DiagonalGaussianPrior(mean, sd));
}

Vector MixtureModel::sample_prior(Rng& rng) const { return prior_.sample(rng); }

double MixtureModel::prior_logpdf(const Vector& theta) const {
  validate_theta(*this, theta);
  return prior_.logpdf(theta);
}

void MixtureModel::simulate_into(const Vector& theta, std::size_t n, Rng& rng, Dataset& out) const {
  const double mu1 = theta[0], s1 = std::exp(theta[1]);
  const double mu2 = theta[2], s2 = std::exp(theta[3]);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> z(0.0, 1.0);
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool first = unif(rng) < p_;
    const double e = z(rng);
    out[i] = first ? mu1 + s1 * e : mu2 + s2 * e;
  }
}

// ---------------------------------------------------------------------------

GaussianMeanModel::GaussianMeanModel(double prior_var, double noise_sd) : prior_var_(prior_var), noise_sd_(noise_sd) {
  if (!(prior_var_ > 0.0) || !(noise_sd_ > 0.0)) {
    throw InvalidConfigError("prior variance and noise sd must be strictly positive");
  }
}

Vector GaussianMeanModel::sample_prior(Rng& rng) const {
  std::normal_distribution<double> z(0.0, std::sqrt(prior_var_));
  Vector theta(1);
  theta[0] = z(rng);
  return theta;
}

double GaussianMeanModel::prior_logpdf(const Vector& theta) const {
  validate_theta(*this, theta);
  return normal_logpdf(theta[0], 0.0, std::sqrt(prior_var_));
}

void GaussianMeanModel::simulate_into(const Vector& theta, std::size_t n, Rng& rng, Dataset& out) const {
  std::normal_distribution<double> z(0.0, 1.0);
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = theta[0] + noise_sd_ * z(rng);
}

// ---------------------------------------------------------------------------

DiscreteToyModel::DiscreteToyModel(std::vector<double> atoms, std::vector<double> prior_weights,
                                   std::vector<Dataset> datasets, std::vector<std::vector<double>> likelihood)
    : atoms_(std::move(atoms)),
      prior_(std::move(prior_weights)),
      datasets_(std::move(datasets)),
      table_(std::move(likelihood)) {
  if (atoms_.empty() || atoms_.size() != prior_.size() || table_.size() != atoms_.size()) {
    throw InvalidConfigError("discrete toy: atoms, prior weights and likelihood rows must have equal counts");
  }
  if (datasets_.empty()) throw InvalidConfigError("discrete toy: no datasets");
  n_ = datasets_.front().size();
  if (n_ == 0) throw InvalidConfigError("discrete toy: datasets must be non-empty");
  for (const auto& ds : datasets_) {
    if (ds.size() != n_) throw InvalidConfigError("discrete toy: datasets must share one size");
  }
  check_distribution(prior_, "discrete toy prior");
  for (std::size_t a = 0; a < table_.size(); ++a) {
    if (table_[a].size() != datasets_.size()) {
      throw InvalidConfigError("discrete toy: likelihood row " + std::to_string(a) + " has the wrong length");
    }
    check_distribution(table_[a], "discrete toy likelihood row " + std::to_string(a));
  }
  prior_cdf_ = cumulative(prior_);
  table_cdf_.reserve(table_.size());
  for (const auto& row : table_) table_cdf_.push_back(cumulative(row));
}

DiscreteToyModel DiscreteToyModel::iid(std::vector<double> atoms, std::vector<double> prior_weights,
                                       std::vector<double> alphabet,
                                       std::vector<std::vector<double>> outcome_probs, std::size_t n) {
  if (alphabet.empty() || n == 0) throw InvalidConfigError("discrete toy: empty alphabet or n = 0");
  if (outcome_probs.size() != atoms.size()) {
    throw InvalidConfigError("discrete toy: need one outcome distribution per atom");
  }
  for (std::size_t a = 0; a < outcome_probs.size(); ++a) {
    if (outcome_probs[a].size() != alphabet.size()) {
      throw InvalidConfigError("discrete toy: outcome distribution " + std::to_string(a) + " has the wrong length");
    }
    check_distribution(outcome_probs[a], "discrete toy outcome distribution " + std::to_string(a));
  }
  const std::size_t k = alphabet.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= k;

  std::vector<Dataset> datasets(count, Dataset(n));
  std::vector<std::vector<double>> table(atoms.size(), std::vector<double>(count, 1.0));
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t code = c;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t sym = code % k;
      code /= k;
      datasets[c][i] = alphabet[sym];
      for (std::size_t a = 0; a < atoms.size(); ++a) table[a][c] *= outcome_probs[a][sym];
    }
  }
  // Products of rows summing to one sum to one up to rounding; renormalize so the
  // row-sum check holds at 1e-12.
  for (auto& row : table) {
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    for (auto& v : row) v /= total;
  }
  return DiscreteToyModel(std::move(atoms), std::move(prior_weights), std::move(datasets), std::move(table));
}

std::optional<std::size_t> DiscreteToyModel::atom_index(const Vector& theta) const {
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    if (theta[0] == atoms_[a]) return a;
  }
  return std::nullopt;
}

Vector DiscreteToyModel::sample_prior(Rng& rng) const {
  Vector theta(1);
  theta[0] = atoms_[draw_from_cdf(prior_cdf_, rng)];
  return theta;
}

double DiscreteToyModel::prior_logpdf(const Vector& theta) const {
  validate_theta(*this, theta);
  const auto a = atom_index(theta);
  if (!a || prior_[*a] == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(prior_[*a]);
}

void DiscreteToyModel::simulate_into(const Vector& theta, std::size_t n, Rng& rng, Dataset& out) const {
  if (n != n_) {
    throw InvalidInputError("discrete toy simulates datasets of size " + std::to_string(n_) + " only");
  }
  const auto a = atom_index(theta);
  if (!a) throw InvalidParameterError("discrete toy parameter is not one of the atoms");
  out = datasets_[draw_from_cdf(table_cdf_[*a], rng)];
}

std::optional<Vector> DiscreteToyModel::propose(const Vector& theta, Rng& rng) const {
  Vector next = theta;
  if (atoms_.size() < 2) return next;
  const auto a = atom_index(theta);
  std::uniform_int_distribution<std::size_t> pick(0, atoms_.size() - 2);
  std::size_t j = pick(rng);
  if (a && j >= *a) ++j;
  next[0] = atoms_[j];
  return next;
}

// ---------------------------------------------------------------------------

void TruthGenerator::validate() const {
  if (n == 0) throw InvalidConfigError("truth.n must be at least 1", "truth.n");
  const std::size_t k = weights.size();
  const std::size_t expected = kind == Kind::kTwoComponent ? 2 : kind == Kind::kThreeComponent ? 3 : 1;
  if (k != expected || means.size() != k || sds.size() != k) {
    throw InvalidConfigError(to_string(kind) + " truth needs " + std::to_string(expected) +
                                 " weights, means and sds",
                             "truth");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidConfigError("truth weights must be non-negative", "truth.weights");
    total += w;
  }
  if (std::abs(total - 1.0) > kRowTolerance) throw InvalidConfigError("truth weights must sum to 1", "truth.weights");
  for (double s : sds) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidConfigError("truth sds must be positive", "truth.sds");
  }
  if (truncation && !(truncation->first < truncation->second)) {
    throw InvalidConfigError("truncation interval must satisfy a < b", "truth.truncation");
  }
}

double TruthGenerator::mean() const {
  double m = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) m += weights[j] * means[j];
  return m;
}

double TruthGenerator::variance() const {
  const double m = mean();
  double second = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) second += weights[j] * (sds[j] * sds[j] + means[j] * means[j]);
  return second - m * m;
}

TruthGenerator TruthGenerator::three_component_default(std::size_t n) {
  TruthGenerator g;
  g.kind = Kind::kThreeComponent;
  g.weights = {0.5, 0.3, 0.2};
  g.means = {-2.0, 0.0, 3.0};
  g.sds = {0.5, 1.0, 0.5};
  g.n = n;
  return g;
}

std::string to_string(TruthGenerator::Kind kind) {
  switch (kind) {
    case TruthGenerator::Kind::kTwoComponent: return "two_component";
    case TruthGenerator::Kind::kThreeComponent: return "three_component";
    case TruthGenerator::Kind::kGaussian: return "gaussian";
  }
  return "unknown";
}

TruthGenerator::Kind truth_kind_from_string(const std::string& s) {
  if (s == "two_component") return TruthGenerator::Kind::kTwoComponent;
  if (s == "three_component") return TruthGenerator::Kind::kThreeComponent;
  if (s == "gaussian") return TruthGenerator::Kind::kGaussian;
  throw InvalidConfigError("unknown truth kind '" + s + "'", "truth.kind");
}

Dataset generate_observations(const TruthGenerator& gen, Rng& rng) {
  gen.validate();
  const std::vector<double> cdf = cumulative(gen.weights);
  std::normal_distribution<double> z(0.0, 1.0);
  Dataset out(gen.n);
  for (auto& y : out) {
    const std::size_t j = draw_from_cdf(cdf, rng);
    y = gen.means[j] + gen.sds[j] * z(rng);
    if (gen.truncation) y = std::clamp(y, gen.truncation->first, gen.truncation->second);
  }
  return out;
}

}  // namespace abcpac
