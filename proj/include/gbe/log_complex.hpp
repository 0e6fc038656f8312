#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace gbe {

inline double wrap_phase(double p) {
  p = std::remainder(p, 2 * std::numbers::pi);
  if (p <= -std::numbers::pi) p += 2 * std::numbers::pi;
  return p;
}

// z = exp(log_mag + i*phase); zero has log_mag = -inf.
struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;

  LogComplex() = default;
  LogComplex(double lm, double ph) : log_mag(lm), phase(std::isfinite(lm) ? wrap_phase(ph) : 0.0) {}

  static LogComplex from_value(std::complex<double> z) {
    if (z == std::complex<double>(0)) return {};
    return {std::log(std::abs(z)), std::arg(z)};
  }
  static LogComplex from_log(std::complex<double> lz) { return {lz.real(), lz.imag()}; }

  bool is_zero() const { return log_mag == -std::numeric_limits<double>::infinity(); }
  std::complex<double> log() const { return {log_mag, phase}; }
  std::complex<double> value() const {
    if (is_zero()) return 0.0;
    return std::polar(std::exp(log_mag), phase);
  }

  LogComplex& operator*=(const LogComplex& o) {
    if (is_zero() || o.is_zero()) return *this = LogComplex();
    return *this = LogComplex(log_mag + o.log_mag, phase + o.phase);
  }
  LogComplex& operator/=(const LogComplex& o) {
    if (is_zero()) return *this;
    return *this = LogComplex(log_mag - o.log_mag, phase - o.phase);
  }
  LogComplex pow(double p) const {
    if (is_zero()) return p == 0 ? LogComplex(0, 0) : LogComplex();
    return {p * log_mag, p * phase};
  }
  LogComplex conj() const { return is_zero() ? *this : LogComplex(log_mag, -phase); }
  LogComplex operator-() const { return is_zero() ? *this : LogComplex(log_mag, phase + std::numbers::pi); }
};

inline LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
inline LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }

inline LogComplex operator+(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const LogComplex& hi = a.log_mag >= b.log_mag ? a : b;
  const LogComplex& lo = a.log_mag >= b.log_mag ? b : a;
  auto r = 1.0 + std::polar(std::exp(lo.log_mag - hi.log_mag), lo.phase - hi.phase);
  if (r == std::complex<double>(0)) return {};
  return {hi.log_mag + std::log(std::abs(r)), hi.phase + std::arg(r)};
}

inline LogComplex operator-(const LogComplex& a, const LogComplex& b) { return a + (-b); }

// |a/b - 1| without leaving log space for the ratio.
inline double relative_deviation(const LogComplex& a, const LogComplex& b) {
  if (b.is_zero()) return a.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs((a / b).value() - 1.0);
}

// Streaming sum of exp(L_i) with a running reference scale.
class LogSum {
 public:
  void add(std::complex<double> log_term) {
    double re = log_term.real();
    if (!(re > -std::numeric_limits<double>::infinity())) return;
    if (re > peak_) peak_ = re;
    if (re > ref_) {
      sum_ *= std::exp(ref_ - re);
      ref_ = re;
    }
    sum_ += std::exp(log_term - ref_);
  }
  void add(std::complex<double> log_term, double weight) {
    if (weight == 0.0) return;
    add(log_term + std::log(std::complex<double>(weight)));
  }
  void merge(const LogSum& o) {
    if (o.peak_ > peak_) peak_ = o.peak_;
    if (!(o.ref_ > -std::numeric_limits<double>::infinity())) return;
    if (o.ref_ > ref_) {
      sum_ *= std::exp(ref_ - o.ref_);
      ref_ = o.ref_;
    }
    sum_ += o.sum_ * std::exp(o.ref_ - ref_);
  }
  LogComplex result() const {
    if (!(ref_ > -std::numeric_limits<double>::infinity()) || sum_ == std::complex<double>(0)) return {};
    return {ref_ + std::log(std::abs(sum_)), std::arg(sum_)};
  }
  // log of the largest single term magnitude.
  double peak() const { return peak_; }

 private:
  double ref_ = -std::numeric_limits<double>::infinity();
  double peak_ = -std::numeric_limits<double>::infinity();
  std::complex<double> sum_ = 0.0;
};

}  // namespace gbe
