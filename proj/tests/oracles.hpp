#pragma once

// Reference implementations used only by the tests. They share no code with
// the library.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

// sum z^n / n^2, for |z| <= 1/2.
inline cplx dilog_series(cplx z) {
  cplx term = z, sum = 0.0;
  for (int n = 1; n < 200; ++n) {
    sum += term / (static_cast<double>(n) * n);
    term *= z;
    if (std::abs(term) < 1e-20) break;
  }
  return sum;
}

// -int_0^1 log(1 - z t) / t dt by tanh-sinh quadrature; z off [1, inf).
inline cplx dilog_quad(cplx z) {
  boost::math::quadrature::tanh_sinh<double> q;
  auto part = [&](bool imag) {
    return q.integrate([&](double t) {
      if (t == 0.0) return imag ? -z.imag() : -z.real();
      cplx v = std::log(1.0 - z * t) / t;
      return imag ? v.imag() : v.real();
    }, 0.0, 1.0);
  };
  return -cplx(part(false), part(true));
}

// Li2 for |z| >= 2 off the cut: inversion onto the series.
inline cplx dilog_inverted(cplx z) {
  cplx l = std::log(-z);
  return -kPi * kPi / 6.0 - 0.5 * l * l - dilog_series(1.0 / z);
}

// -int_0^theta log|2 sin t| dt by quadrature, for theta in (0, pi).
inline double lobachevsky_quad(double theta) {
  boost::math::quadrature::tanh_sinh<double> q;
  return -q.integrate([](double t) { return std::log(std::abs(2.0 * std::sin(t))); }, 0.0, theta);
}

}  // namespace oracle
