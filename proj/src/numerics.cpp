#include "hypervol/numerics.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "hypervol/error.hpp"

namespace hypervol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeta2 = kPi * kPi / 6.0;

// Coefficients of Li2 in powers of u = -log(1 - z):
// Li2 = u - u^2/4 + sum_k B_{2k} u^{2k+1} / (2k+1)!.
struct BernoulliTable {
  static constexpr int N = 22;
  std::array<double, N> li2{};   // B_{2k}/(2k+1)!
  std::array<double, N> cl2{};   // |B_{2k}| / (2k (2k+1)!)
  BernoulliTable() {
    for (int k = 1; k <= N; ++k) {
      // |B_{2k}| = 2 (2k)! zeta(2k) / (2 pi)^{2k}
      double scaled = 2.0 * std::riemann_zeta(2.0 * k) / std::pow(2.0 * kPi, 2.0 * k);
      double sign = (k % 2 == 1) ? 1.0 : -1.0;
      li2[k - 1] = sign * scaled / (2.0 * k + 1.0);
      cl2[k - 1] = scaled / (2.0 * k * (2.0 * k + 1.0));
    }
  }
};

const BernoulliTable& table() {
  static const BernoulliTable t;
  return t;
}

cplx dilog_series(cplx z) {
  cplx u = -std::log(1.0 - z);
  cplx u2 = u * u;
  cplx sum = u - 0.25 * u2;
  cplx p = u;
  const auto& b = table().li2;
  for (double c : b) {
    p *= u2;
    cplx term = c * p;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Clausen function Cl2 on [-pi, pi].
double clausen_reduced(double x) {
  if (x == 0.0) return 0.0;
  double ax = std::abs(x);
  double sum = ax - ax * std::log(ax);
  double p = ax;
  for (double c : table().cl2) {
    p *= ax * ax;
    double term = c * p;
    sum += term;
    if (term < 1e-18 * std::abs(sum)) break;
  }
  return x < 0 ? -sum : sum;
}

// |z| <= 1 up to rounding.
cplx dilog_unit_disk(cplx z) {
  if (z == cplx(0.0, 0.0)) return 0.0;
  if (z.real() > 0.5) return -dilog_series(1.0 - z) + kZeta2 - std::log(z) * std::log(1.0 - z);
  return dilog_series(z);
}

}  // namespace

LogComplex LogComplex::from_complex(cplx z) {
  if (z == cplx(0.0, 0.0)) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

cplx LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag), phase);
}

cplx dilog(cplx z) {
  if (std::isnan(z.real()) || std::isnan(z.imag()))
    throw ValidationError("dilog: NaN argument");
  if (z == cplx(0.0, 0.0)) return 0.0;
  if (z == cplx(1.0, 0.0)) return kZeta2;
  if (std::norm(z) > 1.0) {
    cplx l = std::log(-z);
    return -dilog_unit_disk(1.0 / z) - kZeta2 - 0.5 * l * l;
  }
  return dilog_unit_disk(z);
}

double lobachevsky(double theta) {
  // Lambda(theta) = Cl2(2 theta) / 2, reduced to a period centred at zero.
  double x = std::remainder(2.0 * theta, 2.0 * kPi);
  return 0.5 * clausen_reduced(x);
}

void require_level(long r) {
  if (r < 3 || r % 2 == 0)
    throw ValidationError("invalid level r = " + std::to_string(r) + ": r must be odd and >= 3");
}

cplx quantum_integer(long n, long r) {
  require_level(r);
  long m = n % r;
  if (m == 0) return {0.0, 0.0};
  return {0.0, 2.0 * std::sin(2.0 * kPi * static_cast<double>(m) / static_cast<double>(r))};
}

LogComplex log_quantum_factorial(long n, long r) {
  require_level(r);
  if (n < 0) throw ValidationError("log_quantum_factorial: negative argument");
  LogComplex acc;
  for (long m = 1; m <= n; ++m) {
    if (m % r == 0) return LogComplex::zero();
    double s = 2.0 * std::sin(2.0 * kPi * static_cast<double>(m % r) / static_cast<double>(r));
    acc.log_mag += std::log(std::abs(s));
    acc.phase += 0.5 * kPi + (s < 0 ? kPi : 0.0);
  }
  return acc;
}

}  // namespace hypervol
