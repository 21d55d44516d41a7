#pragma once

#include <complex>
#include <limits>

namespace hypervol {

using cplx = std::complex<double>;

// A complex number kept as (log|z|, arg z). Zero is log_mag = -inf.
// The phase is accumulated, never normalized, so products are exact sums.
struct LogComplex {
  double log_mag = 0.0;
  double phase = 0.0;

  static LogComplex zero() { return {-std::numeric_limits<double>::infinity(), 0.0}; }
  static LogComplex from_complex(cplx z);
  cplx to_complex() const;
  bool is_zero() const { return log_mag == -std::numeric_limits<double>::infinity(); }

  LogComplex operator*(const LogComplex& o) const { return {log_mag + o.log_mag, phase + o.phase}; }
  LogComplex operator/(const LogComplex& o) const { return {log_mag - o.log_mag, phase - o.phase}; }
  LogComplex& operator*=(const LogComplex& o) { return *this = *this * o; }
  LogComplex& operator/=(const LogComplex& o) { return *this = *this / o; }
  // Principal-looking root taken on the accumulated phase.
  LogComplex sqrt() const { return {0.5 * log_mag, 0.5 * phase}; }
  LogComplex pow(double p) const { return {p * log_mag, p * phase}; }
  double abs_log() const { return log_mag; }
};

// Principal branch Li2, cut on [1, inf). On the cut the sign of Im z
// (including signed zero) selects the side.
cplx dilog(cplx z);

// Lobachevsky function, -int_0^theta log|2 sin t| dt.
double lobachevsky(double theta);

// {n} = q^(n/2) - q^(-n/2) with q = exp(4 pi i / r), i.e. 2i sin(2 pi n / r).
cplx quantum_integer(long n, long r);

// prod_{m=1}^n {m}. A vanishing factor gives LogComplex::zero().
LogComplex log_quantum_factorial(long n, long r);

void require_level(long r);

}  // namespace hypervol
