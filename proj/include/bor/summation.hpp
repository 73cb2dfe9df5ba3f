#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace bor {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_mean(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return xs.empty() ? 0.0 : s.value() / static_cast<double>(xs.size());
}

/// ln(sum(exp(xs))) with max shift; -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> xs) {
  double hi = -INFINITY;
  for (double x : xs) hi = x > hi ? x : hi;
  if (!std::isfinite(hi)) return hi;
  CompensatedSum s;
  for (double x : xs) s.add(std::exp(x - hi));
  return hi + std::log(s.value());
}

}  // namespace bor
