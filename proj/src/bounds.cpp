#include "abcpac/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "abcpac/errors.hpp"

namespace abcpac {
namespace {

double m_pow(const BoundConstants& c, double exponent_numerator) {
  // m^{a/p}; p = +inf gives m^0 = 1
  return std::isinf(c.p) ? 1.0 : std::pow(c.m, exponent_numerator / c.p);
}

}  // namespace

void BoundConstants::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || std::isnan(v)) throw InvalidConfigError(std::string(name) + " must be strictly positive", name);
  };
  positive(n, "n");
  positive(m, "m");
  positive(p, "p");
  positive(K, "K");
  positive(d, "d");
  positive(vartheta, "vartheta");
  positive(L, "L");
  positive(C, "C");
  positive(alpha, "alpha");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InvalidConfigError("epsilon must lie in (0,1]", "epsilon");
}

double BoundConstants::f_coefficient() const {
  if (concentration == Concentration::kScaledL2) return K / (2.0 * n);
  return K * K * m_pow(*this, 2.0) / n;
}

std::string to_string(BoundConstants::Concentration c) {
  return c == BoundConstants::Concentration::kLp ? "lp" : "scaled_l2";
}

BoundConstants::Concentration concentration_from_string(const std::string& s) {
  if (s == "lp") return BoundConstants::Concentration::kLp;
  if (s == "scaled_l2") return BoundConstants::Concentration::kScaledL2;
  throw InvalidConfigError("unknown concentration '" + s + "'", "concentration");
}

double BoundReport::component_sum() const {
  double s = 0.0;
  for (const auto& c : components) s += c.value;
  return s;
}

double BoundReport::component(const std::string& name) const {
  for (const auto& c : components) {
    if (c.name == name) return c.value;
  }
  throw InvalidInputError("no bound component named " + name);
}

double mcdiarmid_f(const BoundConstants& constants, double lambda) {
  if (!(lambda >= 0.0)) throw InvalidInputError("lambda must be non-negative");
  return constants.f_coefficient() * lambda * lambda;
}

BoundReport empirical_bound(double log_z_hat, double lambda, const BoundConstants& constants) {
  if (!(lambda > 0.0)) throw InvalidInputError("empirical bound needs lambda > 0");
  BoundReport r;
  r.lambda = lambda;
  r.components = {
      {"neg_log_z_over_lambda", -log_z_hat / lambda},
      {"f_over_lambda", mcdiarmid_f(constants, lambda) / lambda},
      {"log_inv_eps_over_lambda", std::log(1.0 / constants.epsilon) / lambda},
  };
  r.value = r.component_sum();
  r.provenance = "log Z from the SMC ladder; f from the " + to_string(constants.concentration) + " concentration";
  return r;
}

double kl_exponential(double beta, double alpha) {
  if (!(beta > 0.0) || !(alpha > 0.0)) throw InvalidInputError("exponential rates must be positive");
  return std::log(beta / alpha) + (alpha - beta) / beta;
}

LogZInterpolant::LogZInterpolant(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw InvalidInputError("log Z interpolation needs at least two knots");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].first > knots_[i - 1].first)) throw InvalidInputError("ladder knots must be strictly increasing");
  }
}

double LogZInterpolant::operator()(double lambda) const {
  if (lambda < min_lambda() || lambda > max_lambda() || std::isnan(lambda)) {
    throw OutOfRangeError("lambda " + std::to_string(lambda) + " outside the ladder [" + std::to_string(min_lambda()) +
                          ", " + std::to_string(max_lambda()) + "]");
  }
  const auto hi = std::lower_bound(knots_.begin(), knots_.end(), lambda,
                                   [](const auto& k, double v) { return k.first < v; });
  if (hi->first == lambda) return hi->second;
  const auto lo = hi - 1;
  const double t = (lambda - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

double LogZInterpolant::min_positive_lambda() const {
  for (const auto& k : knots_) {
    if (k.first > 0.0) return k.first;
  }
  return max_lambda();
}

BoundReport adaptive_objective_report(double beta, const std::function<double(double)>& log_z_at,
                                      const BoundConstants& constants) {
  if (!(beta >= constants.alpha)) {
    throw InvalidConfigError("beta must be at least alpha for the KL term to be defined", "beta");
  }
  const double xi_lambda = 1.0 / beta;
  const double xi_lambda_sq = 2.0 / (beta * beta);
  const double log_z = log_z_at(xi_lambda);
  BoundReport r;
  r.lambda = xi_lambda;
  r.beta = beta;
  r.components = {
      {"neg_log_z_term", -log_z / xi_lambda},
      {"f_term", xi_lambda_sq * constants.f_coefficient() / xi_lambda},
      {"kl_term", kl_exponential(beta, constants.alpha) / xi_lambda},
      {"log_inv_eps_term", std::log(1.0 / constants.epsilon) / xi_lambda},
  };
  r.value = r.component_sum();
  r.provenance = "log Z interpolated linearly on the ladder at lambda = 1/beta";
  return r;
}

double adaptive_objective(double beta, const std::function<double(double)>& log_z_at, const BoundConstants& constants) {
  return adaptive_objective_report(beta, log_z_at, constants).value;
}

std::vector<double> default_beta_grid(const LadderTrace& trace, const BoundConstants& constants, std::size_t count) {
  const auto interp = LogZInterpolant::from_trace(trace);
  const double beta_lo = 1.0 / interp.max_lambda();
  const double beta_hi = 1.0 / interp.min_positive_lambda();
  std::vector<double> grid;
  if (count == 0) return grid;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    const double beta = std::exp(std::log(beta_lo) + t * (std::log(beta_hi) - std::log(beta_lo)));
    if (beta > constants.alpha) grid.push_back(beta);
  }
  // exact end point so that 1/beta hits the last knot without rounding past it
  if (!grid.empty() && beta_lo > constants.alpha) grid.front() = beta_lo;
  return grid;
}

AdaptiveSelection adaptive_select_lambda(const LadderTrace& trace, const BoundConstants& constants,
                                         std::span<const double> beta_grid) {
  constants.validate();
  if (trace.empty()) throw InvalidConfigError("adaptive selection needs a non-empty ladder");
  const auto interp = LogZInterpolant::from_trace(trace);
  std::vector<double> feasible;
  for (double beta : beta_grid) {
    if (beta > constants.alpha && 1.0 / beta <= interp.max_lambda()) feasible.push_back(beta);
  }
  if (feasible.empty()) throw InvalidConfigError("no feasible beta in the grid (need alpha < beta and 1/beta within the ladder)", "beta_grid");
  std::sort(feasible.begin(), feasible.end());

  AdaptiveSelection sel;
  std::size_t best = 0;
  for (std::size_t i = 0; i < feasible.size(); ++i) {
    sel.grid.push_back(adaptive_objective_report(feasible[i], interp, constants));
    if (sel.grid[i].value < sel.grid[best].value) best = i;
  }
  sel.report = sel.grid[best];
  sel.beta_hat = feasible[best];
  sel.lambda_hat = 1.0 / sel.beta_hat;
  sel.boundary = best == 0 || best + 1 == feasible.size();
  return sel;
}

double k_pm(double p, double m) {
  return std::min({m, 2.0 * std::numbers::e * std::log(m), p - 1.0});
}

double small_ball_log_lower_bound(double d, double vartheta, double delta) {
  return d * (std::log(delta / (2.0 * std::sqrt(2.0 * std::numbers::pi * vartheta * d))) - 1.0 / vartheta -
              delta * delta / (vartheta * d));
}

Corollary1Terms corollary1_terms(const BoundConstants& c) {
  c.validate();
  Corollary1Terms out;
  const double m_1p = m_pow(c, 1.0);
  const double m_2p = m_pow(c, 2.0);
  out.lambda = std::sqrt(c.d * c.n / (c.K * c.K * m_2p));
  out.delta = std::sqrt(c.vartheta / c.n);
  out.k_pm = k_pm(c.p, c.m);
  out.small_ball_log_prob = small_ball_log_lower_bound(c.d, c.vartheta, out.delta);

  const double lambda = out.lambda;
  out.addends = {
      {"variance", 2.0 * c.C * m_1p * c.m / std::sqrt(c.n)},
      {"lipschitz", c.L * out.delta},
      {"concentration", 2.0 * lambda * c.K * c.K * m_2p / c.n},
      {"prior_mass", -2.0 / lambda * out.small_ball_log_prob},
      {"confidence", 2.0 / lambda * std::log(2.0 / c.epsilon)},
  };
  for (const auto& a : out.addends) out.total += a.value;
  return out;
}

NonparametricRate nonparametric_rate(double n, double beta_smooth, double epsilon) {
  if (!(n >= 2.0)) throw InvalidInputError("nonparametric rate needs n >= 2");
  if (!(beta_smooth > 0.0)) throw InvalidInputError("smoothness must be positive");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InvalidInputError("epsilon must lie in (0,1]");
  const double denom = 2.0 * beta_smooth + 1.0;
  const double log_n = std::log(n);
  NonparametricRate r;
  r.rate = std::pow(n, -beta_smooth / denom) * std::pow(log_n, beta_smooth / denom);
  r.deviation = std::pow(n, -(beta_smooth + 1.0) / denom) * std::pow(log_n, beta_smooth / denom) * std::log(2.0 / epsilon);
  r.lambda_n = std::pow(n, (beta_smooth + 1.0) / denom) * std::pow(log_n, beta_smooth / denom);
  r.c_n = std::pow(log_n * log_n / n, 1.0 / denom);
  return r;
}

}  // namespace abcpac
