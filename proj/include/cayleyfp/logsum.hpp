#pragma once

#include <cmath>
#include <limits>

namespace cayleyfp {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln C(x, y) via log-gamma for real x >= y >= 0; degenerate arguments
// (y < 0 or y > x) give -inf, matching the convention C = 0.
inline double ln_choose(double x, double y) {
  if (!(y >= 0.0) || !(x >= y)) return kNegInf;
  return std::lgamma(x + 1.0) - std::lgamma(y + 1.0) - std::lgamma(x - y + 1.0);
}

// Streaming log-sum-exp against a running maximum; never exponentiates
// anything above 0.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace cayleyfp
