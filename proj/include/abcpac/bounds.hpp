#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "abcpac/smc.hpp"

namespace abcpac {

/// Constants entering the concentration and rate bounds.
struct BoundConstants {
  /// Which concentration inequality supplies f(n, lambda).
  enum class Concentration {
    kLp,       ///< bounded empirical moments under an l_p distance: f = lambda^2 K^2 m^{2/p} / n
    kScaledL2  ///< whole-sample statistic under the scaled empirical L2 distance: f = lambda^2 K / (2n)
  };

  double n = 1;        ///< sample size
  double m = 1;        ///< statistic dimension
  double p = 2;        ///< norm order (may be +inf)
  double K = 1;        ///< sup_x max_i |h_i(x)|
  double d = 1;        ///< parameter dimension
  double vartheta = 1; ///< isotropic prior variance
  double L = 1;        ///< local Lipschitz constant
  double C = 1;        ///< variance proxy
  double epsilon = 0.05;
  double alpha = 1;    ///< rate of the exponential prior on lambda
  Concentration concentration = Concentration::kLp;

  /// All constants strictly positive, epsilon in (0,1]. Throws InvalidConfigError.
  void validate() const;
  /// c such that f(n, lambda) = c lambda^2.
  double f_coefficient() const;
};

std::string to_string(BoundConstants::Concentration c);
BoundConstants::Concentration concentration_from_string(const std::string& s);

struct BoundComponent {
  std::string name;
  double value;
};

/// One evaluation of a bound with its itemized addends.
struct BoundReport {
  double lambda = 0.0;
  std::optional<double> beta;
  double value = 0.0;
  std::vector<BoundComponent> components;
  std::string provenance;

  double component_sum() const;
  double component(const std::string& name) const;
};

double mcdiarmid_f(const BoundConstants& constants, double lambda);

/// -log Z / lambda + f(n, lambda) / lambda + log(1/epsilon) / lambda.
BoundReport empirical_bound(double log_z_hat, double lambda, const BoundConstants& constants);

/// KL(Exp(beta) || Exp(alpha)) = log(beta/alpha) + (alpha - beta)/beta.
double kl_exponential(double beta, double alpha);

/// Piecewise-linear log Z over ladder knots (lambda_t, log Z_t).
class LogZInterpolant {
 public:
  explicit LogZInterpolant(std::vector<std::pair<double, double>> knots);
  static LogZInterpolant from_trace(const LadderTrace& trace) { return LogZInterpolant(trace.log_z_knots()); }

  /// Throws OutOfRangeError outside [first knot, last knot].
  double operator()(double lambda) const;
  double min_lambda() const { return knots_.front().first; }
  double max_lambda() const { return knots_.back().first; }
  /// Smallest strictly positive knot.
  double min_positive_lambda() const;

 private:
  std::vector<std::pair<double, double>> knots_;
};

/// AdABC objective for xi = Exp(beta), so xi(lambda) = 1/beta and xi(lambda^2) = 2/beta^2:
///   -beta log Z_{1/beta} + beta [ (2/beta^2) c_f + KL(xi, nu) + log(1/epsilon) ].
/// Throws InvalidConfigError for beta < alpha.
BoundReport adaptive_objective_report(double beta, const std::function<double(double)>& log_z_at,
                                      const BoundConstants& constants);
double adaptive_objective(double beta, const std::function<double(double)>& log_z_at, const BoundConstants& constants);

/// `count` log-spaced values of beta with 1/beta spanning the positive ladder range,
/// restricted to beta > alpha.
std::vector<double> default_beta_grid(const LadderTrace& trace, const BoundConstants& constants,
                                      std::size_t count = 64);

struct AdaptiveSelection {
  double lambda_hat = 0.0;
  double beta_hat = 0.0;
  BoundReport report;
  bool boundary = false;  ///< minimizer at an end of the feasible grid
  std::vector<BoundReport> grid;
};

/// Grid scan of the AdABC objective. Infeasible grid points (beta <= alpha or
/// 1/beta beyond the ladder) are dropped; an empty feasible set throws InvalidConfigError.
AdaptiveSelection adaptive_select_lambda(const LadderTrace& trace, const BoundConstants& constants,
                                         std::span<const double> beta_grid);

/// K(p, m) = min(m, 2e log m, p - 1).
double k_pm(double p, double m);

/// d log{ delta / (2 sqrt(2 pi vartheta d)) exp(-1/vartheta - delta^2/(vartheta d)) },
/// a lower bound on log pi(||theta - theta*|| < delta) under N(0, vartheta I_d), ||theta*|| <= 1.
double small_ball_log_lower_bound(double d, double vartheta, double delta);

struct Corollary1Terms {
  double lambda = 0.0;  ///< sqrt(d n / (K^2 m^{2/p}))
  double delta = 0.0;   ///< sqrt(vartheta / n)
  double k_pm = 0.0;
  double small_ball_log_prob = 0.0;
  std::vector<BoundComponent> addends;
  double total = 0.0;  ///< excess over the oracle term inf_theta ||pi_theta(H) - P(H)||_p
};

/// Right-hand side of the Gaussian-prior oracle inequality, addend by addend, at its
/// prescribed lambda and delta.
Corollary1Terms corollary1_terms(const BoundConstants& constants);

struct NonparametricRate {
  double rate = 0.0;            ///< n^{-b/(2b+1)} (log n)^{b/(2b+1)}
  double deviation = 0.0;       ///< n^{-(b+1)/(2b+1)} (log n)^{b/(2b+1)} log(2/epsilon)
  double lambda_n = 0.0;        ///< n^{(b+1)/(2b+1)} (log n)^{b/(2b+1)}
  double c_n = 0.0;             ///< (log^2 n / n)^{1/(2b+1)}
  bool order_only = true;       ///< unit constants; only the order in n is meaningful
};

/// Throws InvalidInputError unless n >= 2 and beta_smooth > 0.
NonparametricRate nonparametric_rate(double n, double beta_smooth, double epsilon);

}  // namespace abcpac
