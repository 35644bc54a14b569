#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace abcpac {

using Vector = Eigen::VectorXd;

/// Statistic map S(Y^n) = (1/n) sum_i H(Y_i), after optional clamping of each Y_i.
struct SummarySpec {
  enum class Kind {
    kMomentsAndTails,  ///< H(x) = (x, x^2, x^3, x^4, 1{x<-1}, 1{x>2})
    kIndicatorGrid,    ///< H(x) = (1{x<t_1}, ..., 1{x<t_m})
    kIdentity,         ///< S(Y^n) = Y^n itself
    kMean,             ///< H(x) = x
  };

  Kind kind = Kind::kMomentsAndTails;
  std::vector<double> thresholds;
  std::optional<std::pair<double, double>> clamp;

  static SummarySpec moments_and_tails(std::optional<std::pair<double, double>> clamp = std::nullopt);
  static SummarySpec mean(std::optional<std::pair<double, double>> clamp = std::nullopt);
  /// `count` equally spaced thresholds covering [lo, hi] inclusive.
  static SummarySpec indicator_grid(double lo, double hi, std::size_t count,
                                    std::optional<std::pair<double, double>> clamp = std::nullopt);

  /// Output dimension m for datasets of size n (n only matters for kIdentity).
  std::size_t dim(std::size_t n) const;
  /// Certified sup_x max_i |h_i(x)|, when the feature maps are bounded.
  std::optional<double> feature_bound() const;
  void validate() const;
};

/// Metric on statistic space.
struct DistanceSpec {
  enum class Kind {
    kLp,                ///< ||s1 - s2||_p
    kSup,               ///< max_i |s1_i - s2_i|
    kScaledEmpiricalL2  ///< ||s1 - s2||_2 / n with n the vector length
  };

  Kind kind = Kind::kLp;
  double p = 2.0;

  static DistanceSpec lp(double p) { return {Kind::kLp, p}; }
  static DistanceSpec sup() { return {Kind::kSup, 0.0}; }
  static DistanceSpec scaled_empirical_l2() { return {Kind::kScaledEmpiricalL2, 2.0}; }

  /// Norm order as used in m^{2/p}; +inf for the sup norm.
  double norm_order() const;
  void validate() const;
};

std::string to_string(SummarySpec::Kind kind);
std::string to_string(DistanceSpec::Kind kind);
SummarySpec::Kind summary_kind_from_string(const std::string& s);
DistanceSpec::Kind distance_kind_from_string(const std::string& s);

/// Throws InvalidInputError on an empty dataset.
Vector summarize(const SummarySpec& spec, std::span<const double> data);
/// Allocation-free variant; `out` is resized to spec.dim(data.size()).
void summarize_into(const SummarySpec& spec, std::span<const double> data, Vector& out);

/// Throws InvalidInputError on a length mismatch.
double distance(const DistanceSpec& spec, const Vector& s1, const Vector& s2);

}  // namespace abcpac
