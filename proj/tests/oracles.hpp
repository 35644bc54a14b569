#pragma once

// Reference computations used by the tests. Everything here is written from the
// model definitions directly and shares no code with the library beyond plain types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

/// Exact pseudo-posterior of an i.i.d. categorical toy with identity statistic and
/// the l1 distance: every dataset of length n over the alphabet is enumerated.
struct DiscreteResult {
  std::vector<double> posterior;
  double log_z;
};

inline DiscreteResult discrete_posterior(const std::vector<double>& prior, const std::vector<double>& alphabet,
                                         const std::vector<std::vector<double>>& probs, std::size_t n,
                                         const std::vector<double>& observed, double lambda) {
  const std::size_t k = alphabet.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= k;

  std::vector<double> mass(prior.size(), 0.0);
  std::vector<std::size_t> digits(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = n; i-- > 0;) {
      digits[i] = c % k;
      c /= k;
    }
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) dist += std::abs(alphabet[digits[i]] - observed[i]);
    const double kern = std::exp(-lambda * dist);
    for (std::size_t a = 0; a < prior.size(); ++a) {
      double lik = 1.0;
      for (std::size_t i = 0; i < n; ++i) lik *= probs[a][digits[i]];
      mass[a] += prior[a] * lik * kern;
    }
  }
  double z = 0.0;
  for (double v : mass) z += v;
  for (double& v : mass) v /= z;
  return {mass, std::log(z)};
}

inline double normal_pdf(double x, double mu, double sd) {
  const double u = (x - mu) / sd;
  return std::exp(-0.5 * u * u) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

inline double normal_cdf(double x, double mu, double sd) {
  return 0.5 * std::erfc(-(x - mu) / (sd * std::numbers::sqrt2));
}

/// theta ~ N(0, prior_var), X_1..n | theta ~ N(theta, noise_sd^2), S = sample mean,
/// d = |S - y|. Integrates over theta and S | theta ~ N(theta, noise_sd^2 / n) on a 2-d
/// adaptive Gauss-Kronrod rule:
///   Z = E[exp(-lambda |S - y|)],  rho(S) = E[S exp(-lambda |S - y|)] / Z.
struct GaussianToyResult {
  double log_z;
  double stat_mean;
};

inline GaussianToyResult gaussian_mean_toy(double prior_var, double noise_sd, std::size_t n, double y, double lambda) {
  using boost::math::quadrature::gauss_kronrod;
  const double tau = std::sqrt(prior_var);
  const double s_sd = noise_sd / std::sqrt(static_cast<double>(n));
  const double span_t = 12.0 * tau;
  auto inner = [&](double theta, bool first_moment) {
    auto f = [&](double s) {
      const double k = std::exp(-lambda * std::abs(s - y));
      return (first_moment ? s : 1.0) * k * normal_pdf(s, theta, s_sd);
    };
    const double lo = theta - 12.0 * s_sd;
    const double hi = theta + 12.0 * s_sd;
    // split at the kink of the kernel
    if (y <= lo || y >= hi) return gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-14);
    return gauss_kronrod<double, 61>::integrate(f, lo, y, 15, 1e-14) +
           gauss_kronrod<double, 61>::integrate(f, y, hi, 15, 1e-14);
  };
  auto outer = [&](bool first_moment) {
    auto g = [&](double theta) { return normal_pdf(theta, 0.0, tau) * inner(theta, first_moment); };
    return gauss_kronrod<double, 61>::integrate(g, -span_t, span_t, 15, 1e-13);
  };
  const double z = outer(false);
  return {std::log(z), outer(true) / z};
}

/// E[h(clamp(X, lo, hi))] for X drawn from a Gaussian mixture; `breaks` lists the
/// discontinuities of h.
template <typename H>
double clamped_mixture_expectation(const std::vector<double>& w, const std::vector<double>& mu,
                                   const std::vector<double>& sd, double lo, double hi,
                                   const std::vector<double>& breaks, H h) {
  using boost::math::quadrature::gauss_kronrod;
  auto pdf = [&](double x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * normal_pdf(x, mu[j], sd[j]);
    return acc;
  };
  auto cdf = [&](double x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * normal_cdf(x, mu[j], sd[j]);
    return acc;
  };
  std::vector<double> cuts{lo, hi};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b - a <= 0.0) continue;
    acc += gauss_kronrod<double, 61>::integrate([&](double x) { return h(x) * pdf(x); }, a, b, 15, 1e-13);
  }
  acc += h(lo) * cdf(lo) + h(hi) * (1.0 - cdf(hi));
  return acc;
}

/// log sum_i exp(-lambda d'_i) - log sum_i exp(-lambda d_i) + log prior' - log prior by
/// plain summation.
inline double naive_log_ratio(const std::vector<double>& d_new, const std::vector<double>& d_old, double lambda,
                              double log_prior_new, double log_prior_old) {
  long double num = 0.0L, den = 0.0L;
  for (double d : d_new) num += std::exp(-static_cast<long double>(lambda) * d);
  for (double d : d_old) den += std::exp(-static_cast<long double>(lambda) * d);
  return static_cast<double>(std::log(num) - std::log(den)) + log_prior_new - log_prior_old;
}

/// (sum w)^2 / sum w^2 on plain weights.
inline double ess(const std::vector<double>& w) {
  double s = 0.0, s2 = 0.0;
  for (double v : w) {
    s += v;
    s2 += v * v;
  }
  return s * s / s2;
}

}  // namespace oracle
