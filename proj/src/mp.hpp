#pragma once

// Minimal RAII wrapper over mpfr_t. New values take the precision of the
// innermost PrecisionScope on the current thread.

#include <mpfr.h>

#include <utility>

namespace hypervol::mp {

inline thread_local mpfr_prec_t current_precision = 128;

class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits) : saved_(current_precision) { current_precision = bits; }
  ~PrecisionScope() { current_precision = saved_; }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real() { mpfr_init2(v_, current_precision), mpfr_set_zero(v_, 1); }
  Real(double x) { mpfr_init2(v_, current_precision), mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)), mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  Real& operator+=(const Real& o) { return mpfr_add(v_, v_, o.v_, MPFR_RNDN), *this; }
  Real& operator-=(const Real& o) { return mpfr_sub(v_, v_, o.v_, MPFR_RNDN), *this; }
  Real& operator*=(const Real& o) { return mpfr_mul(v_, v_, o.v_, MPFR_RNDN), *this; }
  Real& operator/=(const Real& o) { return mpfr_div(v_, v_, o.v_, MPFR_RNDN), *this; }
  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  Real operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  // Natural log of |x| as a double; -inf for zero.
  double log_abs() const {
    if (is_zero()) return -__builtin_inf();
    Real a;
    mpfr_abs(a.v_, v_, MPFR_RNDN);
    mpfr_log(a.v_, a.v_, MPFR_RNDN);
    return mpfr_get_d(a.v_, MPFR_RNDN);
  }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

  static Real pi() {
    Real r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  friend Real sin(const Real& x) {
    Real r;
    mpfr_sin(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt_abs(const Real& x) {
    Real r;
    mpfr_abs(r.v_, x.v_, MPFR_RNDN);
    mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

// Complex number with Real parts; enough for sums of rotated reals.
struct Complex {
  Real re, im;

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  // x * (-i)^m for a real x.
  static Complex rotated(const Real& x, int m) {
    switch (((m % 4) + 4) % 4) {
      case 0: return {x, Real()};
      case 1: return {Real(), -x};
      case 2: return {-x, Real()};
      default: return {Real(), x};
    }
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  // log|z|, computed without leaving multiprecision.
  double log_abs() const {
    if (is_zero()) return -__builtin_inf();
    Real h;
    mpfr_hypot(h.get(), re.get(), im.get(), MPFR_RNDN);
    return h.log_abs();
  }
  double arg() const {
    Real a;
    mpfr_atan2(a.get(), im.get(), re.get(), MPFR_RNDN);
    return a.to_double();
  }
};

}  // namespace hypervol::mp
