#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace abcpac {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(sum(exp(x))) with the max subtracted; returns -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> x) {
  double hi = kNegInf;
  for (double v : x) hi = std::max(hi, v);
  if (hi == kNegInf) return kNegInf;
  if (hi == std::numeric_limits<double>::infinity()) return hi;
  double acc = 0.0;
  for (double v : x) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

/// Same as log_sum_exp over `scale * x_i`, without materializing the scaled values.
inline double log_sum_exp_scaled(std::span<const double> x, double scale) {
  double hi = kNegInf;
  for (double v : x) hi = std::max(hi, scale * v);
  if (hi == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double v : x) acc += std::exp(scale * v - hi);
  return hi + std::log(acc);
}

}  // namespace abcpac
