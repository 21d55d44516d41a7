#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "hypervol/graph.hpp"
#include "hypervol/numerics.hpp"

namespace hypervol {

// Odd level r >= 3; q = exp(4 pi i / r).
struct Level {
  long r;
  explicit Level(long r_);
};

// Edge id -> color. Colors count twice the spin: a triad (a, b, c) is
// admissible when it satisfies the triangle inequality, a + b + c is even,
// and a + b + c <= 2(r - 2).
using Coloring = std::map<int, long>;

bool admissible(long a, long b, long c, const Level& level);

// {a b e; d c f}: triads (a,b,e), (a,c,f), (d,b,f), (d,c,e).
struct SixJArgs {
  long a = 0, b = 0, e = 0, d = 0, c = 0, f = 0;
  std::array<std::array<long, 3>, 4> triads() const {
    return {{{a, b, e}, {a, c, f}, {d, b, f}, {d, c, e}}};
  }
  std::array<long, 6> as_array() const { return {a, b, e, d, c, f}; }
};

bool admissible(const SixJArgs& s, const Level& level);

// Working precision used for level r, in bits.
int precision_bits(long r);

// Unitary 6j-symbol, multiprecision evaluation. Exactly zero when inadmissible.
LogComplex sixj(const SixJArgs& s, const Level& level);
// Same symbol in double precision with log-domain factorials.
LogComplex sixj_log_domain(const SixJArgs& s, const Level& level);
// Same symbol with plain complex products of quantum integers (small r only).
cplx sixj_naive(const SixJArgs& s, const Level& level);

// Loop value (-1)^k [k+1].
double loop_value(long k, const Level& level);

// sum_k (-1)^k [k+1] {A A C; B B k}^5 with A = (r-3)/3, B = (r-3)/4, C = 3(r-3)/10.
LogComplex prism_invariant(const Level& level, int threads = 1);

// Recoupling evaluation following a reduction trace of the graph.
LogComplex evaluate_network(const PlanarTrivalentGraph& g, const Coloring& coloring, const Level& level,
                            const ReductionTrace* trace = nullptr);

// s = (r - 3)(pi - alpha) / (2 pi) on every edge.
Coloring coloring_sequence(const PlanarTrivalentGraph& g, const Level& level);
// Smallest odd r > 3 for which coloring_sequence is integral.
long smallest_integral_level(const PlanarTrivalentGraph& g);

// 2 pi log|value| / r.
double growth_value(const LogComplex& value, long r);

struct GrowthPoint {
  long r = 0;
  double value = 0.0;
  double phase = 0.0;
  bool excluded = false;  // zero invariant
};

struct GrowthSeries {
  std::vector<GrowthPoint> points;
  // Least-squares fit V(r) ~ c0 + c1 / r (+ c2 / r^2 when there are enough points).
  double extrapolated = 0.0;
  double fit_residual = 0.0;
  bool has_fit = false;
};

GrowthSeries growth_series(const std::vector<std::pair<long, LogComplex>>& values);

struct ScanPoint {
  long index = 0;        // k or l
  double angle = 0.0;    // alpha = 4 pi k / r or beta = 4 pi l / r
  double value = 0.0;    // 2 pi / r log|.|
  double reference = 0.0;  // geometric volume, NaN outside the reference range
  bool in_range = false;
};

// Volume of the regular tetrahedron with all angles theta (hyperbolic range only).
double regular_reference_volume(double theta);
// Volume of the tetrahedron with five angles alpha and one perpendicular
// whose recovered angle is beta; NaN when no such shape exists.
double doubly_truncated_reference_volume(double alpha, double beta);

// 6j with all six colors 2k (spin k), compared with V(|pi - alpha|), alpha = 4 pi k / r.
std::vector<ScanPoint> single_sixj_scan(const Level& level, long k_min, long k_max, int threads = 1);

enum class JRange { Display, Odd };

// Display: sum_j {k k k; k k j} [(2j+1)(2l+1)] / [2j+1].
// Odd: sum_{j odd} {k k k; k k (j-1)/2} [(j+1)(2l+1)] / [j], dropping j = r where [j] = 0.
LogComplex doubly_truncated_sum(const Level& level, long k, long l, JRange range = JRange::Display);
// U((r-3)/3, l) across l, compared with V(beta), beta = 4 pi l / r.
std::vector<ScanPoint> doubly_truncated_scan(const Level& level, long l_min, long l_max,
                                             JRange range = JRange::Display, int threads = 1);

}  // namespace hypervol
