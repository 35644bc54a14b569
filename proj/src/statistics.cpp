#include "abcpac/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abcpac/errors.hpp"

namespace abcpac {

SummarySpec SummarySpec::moments_and_tails(std::optional<std::pair<double, double>> clamp) {
  SummarySpec s;
  s.kind = Kind::kMomentsAndTails;
  s.clamp = clamp;
  return s;
}

SummarySpec SummarySpec::mean(std::optional<std::pair<double, double>> clamp) {
  SummarySpec s;
  s.kind = Kind::kMean;
  s.clamp = clamp;
  return s;
}

SummarySpec SummarySpec::indicator_grid(double lo, double hi, std::size_t count,
                                        std::optional<std::pair<double, double>> clamp) {
  if (count == 0 || !(lo <= hi)) throw InvalidConfigError("indicator grid needs count >= 1 and lo <= hi");
  SummarySpec s;
  s.kind = Kind::kIndicatorGrid;
  s.clamp = clamp;
  s.thresholds.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    s.thresholds[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return s;
}

std::size_t SummarySpec::dim(std::size_t n) const {
  switch (kind) {
    case Kind::kMomentsAndTails: return 6;
    case Kind::kIndicatorGrid: return thresholds.size();
    case Kind::kIdentity: return n;
    case Kind::kMean: return 1;
  }
  return 0;
}

std::optional<double> SummarySpec::feature_bound() const {
  if (kind == Kind::kIndicatorGrid) return 1.0;
  if (!clamp) return std::nullopt;
  const double c = std::max(std::abs(clamp->first), std::abs(clamp->second));
  if (kind == Kind::kIdentity || kind == Kind::kMean) return c;
  // max over x, x^2, x^3, x^4 and the two indicators
  return std::max({c, c * c, c * c * c, c * c * c * c, 1.0});
}

void SummarySpec::validate() const {
  if (clamp && !(clamp->first < clamp->second)) throw InvalidConfigError("clamp interval must satisfy a < b", "summary.clamp");
  if (kind == Kind::kIndicatorGrid) {
    if (thresholds.empty()) throw InvalidConfigError("indicator grid needs at least one threshold", "summary.thresholds");
    if (!std::is_sorted(thresholds.begin(), thresholds.end()) ||
        std::adjacent_find(thresholds.begin(), thresholds.end()) != thresholds.end()) {
      throw InvalidConfigError("thresholds must be strictly increasing", "summary.thresholds");
    }
  }
}

double DistanceSpec::norm_order() const {
  switch (kind) {
    case Kind::kLp: return p;
    case Kind::kSup: return std::numeric_limits<double>::infinity();
    case Kind::kScaledEmpiricalL2: return 2.0;
  }
  return p;
}

void DistanceSpec::validate() const {
  if (kind == Kind::kLp && !(p >= 1.0 && std::isfinite(p))) throw InvalidConfigError("lp distance needs finite p >= 1", "distance.p");
}

std::string to_string(SummarySpec::Kind kind) {
  switch (kind) {
    case SummarySpec::Kind::kMomentsAndTails: return "moments_and_tails";
    case SummarySpec::Kind::kIndicatorGrid: return "indicator_grid";
    case SummarySpec::Kind::kIdentity: return "identity";
    case SummarySpec::Kind::kMean: return "mean";
  }
  return "unknown";
}

std::string to_string(DistanceSpec::Kind kind) {
  switch (kind) {
    case DistanceSpec::Kind::kLp: return "lp";
    case DistanceSpec::Kind::kSup: return "sup";
    case DistanceSpec::Kind::kScaledEmpiricalL2: return "scaled_empirical_l2";
  }
  return "unknown";
}

SummarySpec::Kind summary_kind_from_string(const std::string& s) {
  if (s == "moments_and_tails") return SummarySpec::Kind::kMomentsAndTails;
  if (s == "indicator_grid") return SummarySpec::Kind::kIndicatorGrid;
  if (s == "identity") return SummarySpec::Kind::kIdentity;
  if (s == "mean") return SummarySpec::Kind::kMean;
  throw InvalidConfigError("unknown summary kind '" + s + "'", "summary.kind");
}

DistanceSpec::Kind distance_kind_from_string(const std::string& s) {
  if (s == "lp") return DistanceSpec::Kind::kLp;
  if (s == "sup") return DistanceSpec::Kind::kSup;
  if (s == "scaled_empirical_l2") return DistanceSpec::Kind::kScaledEmpiricalL2;
  throw InvalidConfigError("unknown distance kind '" + s + "'", "distance.kind");
}

void summarize_into(const SummarySpec& spec, std::span<const double> data, Vector& out) {
  if (data.empty()) throw InvalidInputError("cannot summarize an empty dataset");
  const auto n = data.size();
  auto clamped = [&](double x) { return spec.clamp ? std::clamp(x, spec.clamp->first, spec.clamp->second) : x; };
  out.resize(static_cast<Eigen::Index>(spec.dim(n)));
  switch (spec.kind) {
    case SummarySpec::Kind::kMomentsAndTails: {
      double s1 = 0, s2 = 0, s3 = 0, s4 = 0, below = 0, above = 0;
      for (double raw : data) {
        const double x = clamped(raw);
        const double x2 = x * x;
        s1 += x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
        below += x < -1.0 ? 1.0 : 0.0;
        above += x > 2.0 ? 1.0 : 0.0;
      }
      out << s1, s2, s3, s4, below, above;
      out /= static_cast<double>(n);
      break;
    }
    case SummarySpec::Kind::kIndicatorGrid: {
      out.setZero();
      const auto& t = spec.thresholds;
      for (double raw : data) {
        const double x = clamped(raw);
        // thresholds sorted: 1{x < t_i} holds for every i past the first t_i > x
        const auto first = std::upper_bound(t.begin(), t.end(), x);
        for (auto it = first; it != t.end(); ++it) out[it - t.begin()] += 1.0;
      }
      out /= static_cast<double>(n);
      break;
    }
    case SummarySpec::Kind::kIdentity:
      for (std::size_t i = 0; i < n; ++i) out[static_cast<Eigen::Index>(i)] = clamped(data[i]);
      break;
    case SummarySpec::Kind::kMean: {
      double s1 = 0.0;
      for (double raw : data) s1 += clamped(raw);
      out[0] = s1 / static_cast<double>(n);
      break;
    }
  }
}

Vector summarize(const SummarySpec& spec, std::span<const double> data) {
  Vector out;
  summarize_into(spec, data, out);
  return out;
}

double distance(const DistanceSpec& spec, const Vector& s1, const Vector& s2) {
  if (s1.size() != s2.size()) {
    throw InvalidInputError("statistic vectors differ in length (" + std::to_string(s1.size()) + " vs " +
                            std::to_string(s2.size()) + ")");
  }
  switch (spec.kind) {
    case DistanceSpec::Kind::kLp: {
      if (spec.p == 2.0) return (s1 - s2).norm();
      if (spec.p == 1.0) return (s1 - s2).lpNorm<1>();
      double acc = 0.0;
      for (Eigen::Index i = 0; i < s1.size(); ++i) acc += std::pow(std::abs(s1[i] - s2[i]), spec.p);
      return std::pow(acc, 1.0 / spec.p);
    }
    case DistanceSpec::Kind::kSup:
      return s1.size() == 0 ? 0.0 : (s1 - s2).lpNorm<Eigen::Infinity>();
    case DistanceSpec::Kind::kScaledEmpiricalL2:
      return s1.size() == 0 ? 0.0 : (s1 - s2).norm() / static_cast<double>(s1.size());
  }
  return 0.0;
}

}  // namespace abcpac
