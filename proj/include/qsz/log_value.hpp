#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace qsz {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln(e^a + e^b) without overflow; either argument may be -inf.
inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

/// ln sum_i e^{x_i} with max-shift. Empty or all -inf input yields -inf.
double log_sum_exp(std::span<const double> logs);

/// sign * exp(log_magnitude). A sign of 0 is an exact zero and the magnitude
/// is then ignored.
class LogValue {
 public:
  constexpr LogValue() = default;

  static LogValue from_log(double log_magnitude, int sign = 1) {
    LogValue v;
    v.sign_ = sign == 0 ? 0 : (sign > 0 ? 1 : -1);
    v.log_ = v.sign_ == 0 ? kNegInf : log_magnitude;
    if (v.log_ == kNegInf) v.sign_ = 0;
    return v;
  }
  static LogValue from_double(double x) {
    if (x == 0.0) return {};
    return from_log(std::log(std::fabs(x)), x > 0 ? 1 : -1);
  }
  static LogValue one() { return from_log(0.0); }

  double log_magnitude() const { return log_; }
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  double to_double() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_); }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.is_zero() || b.is_zero()) return {};
    return from_log(a.log_ + b.log_, a.sign_ * b.sign_);
  }
  friend LogValue operator/(LogValue a, LogValue b);
  friend LogValue operator+(LogValue a, LogValue b);
  friend LogValue operator-(LogValue a) { return from_log(a.log_, -a.sign_); }
  friend LogValue operator-(LogValue a, LogValue b) { return a + (-b); }

 private:
  double log_ = kNegInf;
  int sign_ = 0;
};

}  // namespace qsz
