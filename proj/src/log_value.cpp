#include "qsz/log_value.hpp"

#include <algorithm>

#include "qsz/errors.hpp"

namespace qsz {

double log_sum_exp(std::span<const double> logs) {
  double top = kNegInf;
  for (double v : logs) top = std::max(top, v);
  if (top == kNegInf) return kNegInf;
  if (top == std::numeric_limits<double>::infinity()) return top;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - top);
  return top + std::log(acc);
}

LogValue operator/(LogValue a, LogValue b) {
  if (b.is_zero()) throw DomainError("LogValue: division by zero");
  if (a.is_zero()) return {};
  return LogValue::from_log(a.log_ - b.log_, a.sign_ * b.sign_);
}

LogValue operator+(LogValue a, LogValue b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.log_ < b.log_) std::swap(a, b);
  const double ratio = std::exp(b.log_ - a.log_);  // in (0, 1]
  if (a.sign_ == b.sign_) return LogValue::from_log(a.log_ + std::log1p(ratio), a.sign_);
  if (ratio == 1.0) return {};
  return LogValue::from_log(a.log_ + std::log1p(-ratio), a.sign_);
}

}  // namespace qsz
