#include "hypervol/kr.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <numbers>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "hypervol/error.hpp"
#include "hypervol/tetra.hpp"
#include "mp.hpp"

namespace hypervol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Balanced quantum factorials [n]! = prod sin(2 pi m / r) / sin(2 pi / r)
// at the working precision, with their inverses. Zero from n = r on.
struct FactorialTable {
  long r = 0;
  mpfr_prec_t bits = 0;
  mp::Real step;  // 2 pi / r
  mp::Real sin_step;
  std::vector<mp::Real> fact;
  std::vector<mp::Real> inv;

  FactorialTable(long r_, mpfr_prec_t bits_) : r(r_), bits(bits_) {
    step = mp::Real::pi() * mp::Real(2.0) / mp::Real(static_cast<double>(r));
    sin_step = sin(step);
    const long n_max = 2 * r + 2;
    fact.resize(n_max + 1);
    inv.resize(r);
    fact[0] = mp::Real(1.0);
    for (long n = 1; n <= n_max; ++n) {
      if (n >= r) {
        fact[n] = mp::Real(0.0);
        continue;
      }
      fact[n] = fact[n - 1] * qint(n);
    }
    for (long n = 0; n < r; ++n) inv[n] = mp::Real(1.0) / fact[n];
  }

  // [n] = sin(2 pi n / r) / sin(2 pi / r).
  mp::Real qint(long n) const {
    long m = ((n % r) + r) % r;
    if (m == 0) return mp::Real(0.0);
    return sin(step * mp::Real(static_cast<double>(m))) / sin_step;
  }

  const mp::Real& f(long n) const {
    if (n < 0 || n >= static_cast<long>(fact.size())) throw InfeasibleError("numerical anomaly: factorial index out of range");
    return fact[n];
  }
  const mp::Real& finv(long n) const {
    if (n < 0 || n >= r) throw InfeasibleError("numerical anomaly: vanishing quantum factorial in a denominator");
    return inv[n];
  }
};

// Per-thread table for the current level and precision.
const FactorialTable& table_for(long r) {
  thread_local std::unique_ptr<FactorialTable> cached;
  if (!cached || cached->r != r || cached->bits != mp::current_precision)
    cached = std::make_unique<FactorialTable>(r, mp::current_precision);
  return *cached;
}

// Real value times (-i)^m.
struct Rotated {
  mp::Real value;
  int m = 0;
};

mp::Real theta_mp(const FactorialTable& t, long a, long b, long c) {
  long m = (a + b - c) / 2, n = (b + c - a) / 2, p = (a + c - b) / 2;
  mp::Real v = t.f(m + n + p + 1) * t.f(m) * t.f(n) * t.f(p) * t.finv(m + n) * t.finv(n + p) * t.finv(m + p);
  return (m + n + p) % 2 ? -v : v;
}

// Tetrahedral network Tet[A B E; C D F]: faces (A,D,E), (B,C,E), (A,B,F), (C,D,F).
mp::Real tet_mp(const FactorialTable& t, long A, long B, long E, long C, long D, long F) {
  const std::array<long, 4> a = {(A + D + E) / 2, (B + C + E) / 2, (A + B + F) / 2, (C + D + F) / 2};
  const std::array<long, 3> b = {(B + D + E + F) / 2, (A + C + E + F) / 2, (A + B + C + D) / 2};
  mp::Real pref(1.0);
  for (long ai : a)
    for (long bj : b) pref *= t.f(bj - ai);
  for (long c : {A, B, C, D, E, F}) pref *= t.finv(c);
  const long lo = *std::max_element(a.begin(), a.end());
  const long hi = *std::min_element(b.begin(), b.end());
  mp::Real sum(0.0), term;
  for (long s = lo; s <= hi; ++s) {
    if (s + 1 >= t.r) break;  // [s+1]! vanishes
    term = t.f(s + 1);
    for (long ai : a) mpfr_mul(term.get(), term.get(), t.finv(s - ai).get(), MPFR_RNDN);
    for (long bj : b) mpfr_mul(term.get(), term.get(), t.finv(bj - s).get(), MPFR_RNDN);
    if (s % 2) sum -= term;
    else sum += term;
  }
  return pref * sum;
}

Rotated sixj_mp(const FactorialTable& t, const SixJArgs& s, const Level& level) {
  if (!admissible(s, level)) return {mp::Real(0.0), 0};
  mp::Real tet = tet_mp(t, s.a, s.c, s.e, s.d, s.b, s.f);
  mp::Real den(1.0);
  int negatives = 0;
  for (const auto& tr : s.triads()) {
    mp::Real th = theta_mp(t, tr[0], tr[1], tr[2]);
    if (th.is_zero()) throw InfeasibleError("numerical anomaly: vanishing theta at an admissible triad");
    if (th.sign() < 0) ++negatives;
    den *= th;
  }
  return {tet / sqrt_abs(den), negatives};
}

LogComplex to_log_complex(const mp::Complex& z) {
  if (z.is_zero()) return LogComplex::zero();
  return {z.log_abs(), z.arg()};
}

LogComplex to_log_complex(const Rotated& x) {
  if (x.value.is_zero()) return LogComplex::zero();
  return {x.value.log_abs(), (x.value.sign() < 0 ? kPi : 0.0) - 0.5 * kPi * x.m};
}

// Runs body(i) for i in [0, n) on up to `threads` workers, each with its own
// precision scope.
void parallel_for(long n, int threads, mpfr_prec_t bits, const std::function<void(long)>& body) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<long>(n, 1))));
  if (threads == 1) {
    mp::PrecisionScope scope(bits);
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      mp::PrecisionScope scope(bits);
      try {
        for (long i = next++; i < n; i = next++) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

double sin_ratio(long n, long r) {
  return std::sin(2.0 * kPi * static_cast<double>(n % r) / static_cast<double>(r)) / std::sin(2.0 * kPi / static_cast<double>(r));
}

}  // namespace

Level::Level(long r_) : r(r_) { require_level(r); }

bool admissible(long a, long b, long c, const Level& level) {
  if (a < 0 || b < 0 || c < 0) return false;
  if (c < std::abs(a - b) || c > a + b) return false;
  if ((a + b + c) % 2 != 0) return false;
  return a + b + c <= 2 * (level.r - 2);
}

bool admissible(const SixJArgs& s, const Level& level) {
  for (const auto& t : s.triads())
    if (!admissible(t[0], t[1], t[2], level)) return false;
  return true;
}

int precision_bits(long r) { return static_cast<int>(128 + r / 2); }

LogComplex sixj(const SixJArgs& s, const Level& level) {
  if (!admissible(s, level)) return LogComplex::zero();
  mp::PrecisionScope scope(precision_bits(level.r));
  return to_log_complex(sixj_mp(table_for(level.r), s, level));
}

LogComplex sixj_log_domain(const SixJArgs& s, const Level& level) {
  if (!admissible(s, level)) return LogComplex::zero();
  const long r = level.r;
  const LogComplex q1 = LogComplex::from_complex(quantum_integer(1, r));
  auto fact = [&](long n) { return log_quantum_factorial(n, r) / q1.pow(static_cast<double>(n)); };
  auto theta = [&](long a, long b, long c) {
    long m = (a + b - c) / 2, n = (b + c - a) / 2, p = (a + c - b) / 2;
    LogComplex v = fact(m + n + p + 1) * fact(m) * fact(n) * fact(p) / (fact(m + n) * fact(n + p) * fact(m + p));
    if ((m + n + p) % 2) v.phase += kPi;
    return v;
  };
  const long A = s.a, B = s.c, E = s.e, C = s.d, D = s.b, F = s.f;
  const std::array<long, 4> a = {(A + D + E) / 2, (B + C + E) / 2, (A + B + F) / 2, (C + D + F) / 2};
  const std::array<long, 3> b = {(B + D + E + F) / 2, (A + C + E + F) / 2, (A + B + C + D) / 2};
  LogComplex pref;
  for (long ai : a)
    for (long bj : b) pref *= fact(bj - ai);
  for (long c : {A, B, C, D, E, F}) pref /= fact(c);
  std::vector<LogComplex> terms;
  for (long s_ = *std::max_element(a.begin(), a.end()); s_ <= *std::min_element(b.begin(), b.end()); ++s_) {
    LogComplex t = fact(s_ + 1);
    if (t.is_zero()) break;
    for (long ai : a) t /= fact(s_ - ai);
    for (long bj : b) t /= fact(bj - s_);
    if (s_ % 2) t.phase += kPi;
    terms.push_back(t);
  }
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) top = std::max(top, t.log_mag);
  std::complex<long double> acc = 0;
  for (const auto& t : terms)
    acc += std::polar<long double>(std::exp(static_cast<long double>(t.log_mag - top)), static_cast<long double>(t.phase));
  if (acc == std::complex<long double>(0)) return LogComplex::zero();
  LogComplex sum{top + static_cast<double>(std::log(std::abs(acc))), static_cast<double>(std::arg(acc))};
  LogComplex out = pref * sum;
  for (const auto& tr : s.triads()) {
    LogComplex th = theta(tr[0], tr[1], tr[2]);
    th.phase = std::remainder(th.phase, 2.0 * kPi);
    if (th.phase <= -kPi + 1e-9) th.phase += 2.0 * kPi;  // principal root of a negative value
    out /= th.sqrt();
  }
  return out;
}

cplx sixj_naive(const SixJArgs& s, const Level& level) {
  if (!admissible(s, level)) return {0.0, 0.0};
  const long r = level.r;
  const cplx q1 = quantum_integer(1, r);
  auto fact = [&](long n) {
    cplx v = 1.0;
    for (long m = 1; m <= n; ++m) v *= quantum_integer(m, r) / q1;
    return v;
  };
  // prod fact(nums) / prod fact(dens), alternating so partial products stay in range.
  auto ratio = [&](std::vector<long> nums, std::vector<long> dens) {
    cplx v = 1.0;
    size_t i = 0, j = 0;
    while (i < nums.size() || j < dens.size()) {
      if (j < dens.size() && (std::abs(v) > 1.0 || i == nums.size())) v /= fact(dens[j++]);
      else v *= fact(nums[i++]);
    }
    return v;
  };
  auto theta = [&](long a, long b, long c) {
    long m = (a + b - c) / 2, n = (b + c - a) / 2, p = (a + c - b) / 2;
    cplx v = ratio({m + n + p + 1, m, n, p}, {m + n, n + p, m + p});
    return (m + n + p) % 2 ? -v : v;
  };
  const long A = s.a, B = s.c, E = s.e, C = s.d, D = s.b, F = s.f;
  const std::array<long, 4> a = {(A + D + E) / 2, (B + C + E) / 2, (A + B + F) / 2, (C + D + F) / 2};
  const std::array<long, 3> b = {(B + D + E + F) / 2, (A + C + E + F) / 2, (A + B + C + D) / 2};
  std::vector<long> pref_nums;
  for (long ai : a)
    for (long bj : b) pref_nums.push_back(bj - ai);
  cplx norm = 1.0;
  for (const auto& tr : s.triads()) norm *= std::sqrt(cplx(theta(tr[0], tr[1], tr[2]).real(), 0.0));
  cplx sum = 0.0;
  for (long s_ = *std::max_element(a.begin(), a.end()); s_ <= *std::min_element(b.begin(), b.end()); ++s_) {
    if (s_ + 1 >= r) break;
    std::vector<long> nums = pref_nums, dens = {A, B, C, D, E, F};
    nums.push_back(s_ + 1);
    for (long ai : a) dens.push_back(s_ - ai);
    for (long bj : b) dens.push_back(bj - s_);
    cplx t = ratio(nums, dens);
    sum += s_ % 2 ? -t : t;
  }
  return sum / norm;
}

double loop_value(long k, const Level& level) {
  double v = sin_ratio(k + 1, level.r);
  return k % 2 ? -v : v;
}

LogComplex prism_invariant(const Level& level, int threads) {
  const long r = level.r;
  if ((r - 3) % 60 != 0) {
    long next = r + (60 - (r - 3) % 60);
    throw ValidationError("prism invariant: (r-3) not divisible by 60 for r = " + std::to_string(r) +
                          " (nearest valid levels " + std::to_string(next - 60 >= 3 ? next - 60 : 63) + ", " +
                          std::to_string(next) + ")");
  }
  const long A = (r - 3) / 3, B = (r - 3) / 4, C = 3 * (r - 3) / 10;
  const long k_max = 2 * (r - 2);
  const mpfr_prec_t bits = precision_bits(r);
  std::vector<std::unique_ptr<mp::Complex>> parts(k_max + 1);
  parallel_for(k_max + 1, threads, bits, [&](long k) {
    SixJArgs s{A, A, C, B, B, k};
    if (!admissible(s, level)) return;
    const FactorialTable& t = table_for(r);
    Rotated x = sixj_mp(t, s, level);
    mp::Real p = x.value * x.value;
    p *= p;
    p *= x.value;
    p *= t.qint(k + 1);
    if (k % 2) p = -p;
    parts[k] = std::make_unique<mp::Complex>(mp::Complex::rotated(p, 5 * x.m));
  });
  mp::PrecisionScope scope(bits);
  mp::Complex total;
  for (const auto& p : parts)
    if (p) total += *p;
  return to_log_complex(total);
}

namespace {

// Recoupling evaluation over a fixed sequence of graph states.
class NetworkEvaluator {
 public:
  NetworkEvaluator(const PlanarTrivalentGraph& g, const ReductionTrace& trace, const Level& level)
      : level_(level), table_(table_for(level.r)), moves_(trace.moves) {
    states_.push_back(g);
    for (const Move& m : moves_)
      states_.push_back(m.kind == Move::Kind::Cap ? states_.back().apply_cap(m.id) : states_.back().apply_ih(m.id));
  }

  mp::Complex run(Coloring coloring) { return eval(0, coloring); }

 private:
  static constexpr int kNew = -1;  // stands for the rewired edge after an I-H move
  using Triads = std::array<std::array<int, 3>, 4>;

  // Lays out four vertex triads of a tetrahedral subgraph as {a b e; d c f}.
  static SixJArgs layout(const Triads& tri, const std::function<long(int)>& color) {
    auto shares = [&](int x, int y) {
      for (const auto& t : tri)
        if (std::count(t.begin(), t.end(), x) && std::count(t.begin(), t.end(), y)) return true;
      return false;
    };
    std::vector<int> ids;
    for (const auto& t : tri)
      for (int x : t)
        if (!std::count(ids.begin(), ids.end(), x)) ids.push_back(x);
    auto opposite = [&](int x) {
      for (int y : ids)
        if (y != x && !shares(x, y)) return y;
      throw InfeasibleError("numerical anomaly: subgraph is not a tetrahedron");
    };
    const auto& t0 = tri[0];
    return {color(t0[0]), color(t0[1]), color(t0[2]), color(opposite(t0[0])), color(opposite(t0[1])),
            color(opposite(t0[2]))};
  }

  Rotated cached_sixj(const SixJArgs& s) {
    auto key = s.as_array();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Rotated v = sixj_mp(table_, s, level_);
    cache_.emplace(key, v);
    return v;
  }

  static std::array<int, 3> triad_of(const PlanarTrivalentGraph& g, int v) { return g.vertex(v).edges; }

  mp::Complex eval(std::size_t step, Coloring& col) {
    const PlanarTrivalentGraph& g = states_[step];
    auto color = [&](int e) { return col.at(e); };
    if (step == moves_.size()) {
      auto vs = g.live_vertices();
      Triads tri{triad_of(g, vs[0]), triad_of(g, vs[1]), triad_of(g, vs[2]), triad_of(g, vs[3])};
      Rotated x = cached_sixj(layout(tri, color));
      return mp::Complex::rotated(x.value, x.m);
    }
    const Move& m = moves_[step];
    const PlanarTrivalentGraph& next = states_[step + 1];
    if (m.kind == Move::Kind::Cap) {
      Triads tri{};
      int k = 0, kept = -1;
      for (int v : g.live_vertices()) {
        const auto& fs = g.vertex(v).faces;
        if (std::find(fs.begin(), fs.end(), m.id) == fs.end()) continue;
        tri[k++] = triad_of(g, v);
        if (next.vertex(v).alive) kept = v;
      }
      tri[3] = triad_of(next, kept);
      Rotated x = cached_sixj(layout(tri, color));
      if (x.value.is_zero()) return {};
      return mp::Complex::rotated(x.value, x.m) * eval(step + 1, col);
    }
    const int e = m.id;
    const auto& ed = g.edge(e);
    auto with_new = [&](std::array<int, 3> t) {
      for (int& x : t)
        if (x == e) x = kNew;
      return t;
    };
    Triads tri{triad_of(g, ed.v0), triad_of(g, ed.v1), with_new(triad_of(next, ed.v0)), with_new(triad_of(next, ed.v1))};
    const long j = col.at(e);
    mp::Complex total;
    for (long i = 0; i <= 2 * (level_.r - 2); ++i) {
      auto c2 = [&](int x) { return x == kNew ? i : col.at(x); };
      bool ok = true;
      for (int v : {2, 3})
        ok = ok && admissible(c2(tri[v][0]), c2(tri[v][1]), c2(tri[v][2]), level_);
      if (!ok) continue;
      Rotated x = cached_sixj(layout(tri, c2));
      if (x.value.is_zero()) continue;
      col[e] = i;
      mp::Real w = x.value * table_.qint(i + 1);
      if (i % 2) w = -w;
      total += mp::Complex::rotated(w, x.m) * eval(step + 1, col);
      col[e] = j;
    }
    return total;
  }

  const Level& level_;
  const FactorialTable& table_;
  std::vector<Move> moves_;
  std::vector<PlanarTrivalentGraph> states_;
  std::map<std::array<long, 6>, Rotated> cache_;
};

}  // namespace

LogComplex evaluate_network(const PlanarTrivalentGraph& g, const Coloring& coloring, const Level& level,
                            const ReductionTrace* trace) {
  for (int e : g.live_edges()) {
    auto it = coloring.find(e);
    if (it == coloring.end()) throw ValidationError("coloring has no color for edge " + std::to_string(e));
    if (it->second < 0) throw ValidationError("negative color on edge " + std::to_string(e));
  }
  for (int v : g.live_vertices()) {
    const auto& es = g.vertex(v).edges;
    if (!admissible(coloring.at(es[0]), coloring.at(es[1]), coloring.at(es[2]), level)) return LogComplex::zero();
  }
  // Theta graph: normalized to 1.
  if (g.vertex_count() == 2) return LogComplex{};
  ReductionTrace local;
  if (!trace) {
    local = reduce(g);
    trace = &local;
  }
  mp::PrecisionScope scope(precision_bits(level.r));
  NetworkEvaluator ev(g, *trace, level);
  return to_log_complex(ev.run(coloring));
}

namespace {

// r - 3 must be a multiple of this for every color to be an integer.
long level_step(const PlanarTrivalentGraph& g) {
  long step = 2;
  for (int e : g.live_edges()) {
    auto a = g.angle(e);
    if (!a) throw ValidationError("angles required: edge " + std::to_string(e) + " has no dihedral angle");
    long den = 2 * a->q;
    step = std::lcm(step, den / std::gcd(a->q - a->p, den));
  }
  return step;
}

}  // namespace

Coloring coloring_sequence(const PlanarTrivalentGraph& g, const Level& level) {
  const long step = level_step(g);
  Coloring out;
  std::vector<int> bad;
  for (int e : g.live_edges()) {
    Angle a = *g.angle(e);
    long num = (level.r - 3) * (a.q - a.p);
    long den = 2 * a.q;
    if (num % den != 0) {
      bad.push_back(e);
      continue;
    }
    out[e] = num / den;
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "non-integer colors at r = " << level.r << " on edges";
    for (int e : bad) os << ' ' << e;
    os << ": (r-3) not divisible by " << step << "; smallest valid r = " << 3 + step;
    throw ValidationError(os.str());
  }
  return out;
}

long smallest_integral_level(const PlanarTrivalentGraph& g) { return 3 + level_step(g); }

double growth_value(const LogComplex& value, long r) { return 2.0 * kPi * value.log_mag / static_cast<double>(r); }

GrowthSeries growth_series(const std::vector<std::pair<long, LogComplex>>& values) {
  GrowthSeries out;
  for (const auto& [r, v] : values) {
    require_level(r);
    if (!out.points.empty() && r <= out.points.back().r)
      throw ValidationError("growth series levels must be strictly increasing");
    GrowthPoint p;
    p.r = r;
    p.excluded = v.is_zero();
    p.value = p.excluded ? kNaN : growth_value(v, r);
    p.phase = p.excluded ? 0.0 : std::remainder(v.phase, 2.0 * kPi);
    out.points.push_back(p);
  }
  std::vector<const GrowthPoint*> used;
  for (const auto& p : out.points)
    if (!p.excluded) used.push_back(&p);
  if (used.size() >= 2) {
    const int cols = used.size() >= 4 ? 3 : 2;
    Eigen::MatrixXd X(used.size(), cols);
    Eigen::VectorXd y(used.size());
    for (std::size_t i = 0; i < used.size(); ++i) {
      double inv = 1.0 / static_cast<double>(used[i]->r);
      X(i, 0) = 1.0;
      X(i, 1) = inv;
      if (cols == 3) X(i, 2) = inv * inv;
      y(i) = used[i]->value;
    }
    Eigen::VectorXd c = X.colPivHouseholderQr().solve(y);
    out.extrapolated = c(0);
    out.fit_residual = std::sqrt((X * c - y).squaredNorm() / static_cast<double>(used.size()));
    out.has_fit = true;
  }
  return out;
}

double regular_reference_volume(double theta) {
  if (!(theta > 0.0) || !(theta < std::acos(1.0 / 3.0))) return kNaN;
  return volume(TetrahedronShape::all_angles(theta));
}

double doubly_truncated_reference_volume(double alpha, double beta) {
  auto shape = [&](double l) {
    TetrahedronShape s = TetrahedronShape::all_angles(alpha);
    s.params[3] = EdgeParameter::length(l);
    return s;
  };
  auto g = [&](double l) {
    try {
      return angle_at_length_edge(shape(l), 3) - beta;
    } catch (const Error&) {
      return kNaN;
    }
  };
  constexpr int kSamples = 400;
  constexpr double kLmax = 8.0;
  double prev_l = kLmax / kSamples, prev = g(prev_l);
  for (int i = 2; i <= kSamples; ++i) {
    double l = kLmax * i / kSamples, cur = g(l);
    if (std::isfinite(prev) && std::isfinite(cur) && prev * cur <= 0.0 && std::abs(prev - cur) < 1.0) {
      boost::uintmax_t iters = 100;
      auto [lo, hi] = boost::math::tools::toms748_solve(g, prev_l, l, prev, cur,
                                                        boost::math::tools::eps_tolerance<double>(50), iters);
      try {
        return volume(shape(0.5 * (lo + hi)));
      } catch (const Error&) {
        return kNaN;
      }
    }
    prev_l = l;
    prev = cur;
  }
  return kNaN;
}

std::vector<ScanPoint> single_sixj_scan(const Level& level, long k_min, long k_max, int threads) {
  const long r = level.r;
  k_min = std::max<long>(k_min, 0);
  std::vector<ScanPoint> out(std::max<long>(k_max - k_min + 1, 0));
  parallel_for(static_cast<long>(out.size()), threads, precision_bits(r), [&](long i) {
    long k = k_min + i;
    ScanPoint& p = out[i];
    p.index = k;
    p.angle = 4.0 * kPi * static_cast<double>(k) / static_cast<double>(r);
    SixJArgs s{2 * k, 2 * k, 2 * k, 2 * k, 2 * k, 2 * k};
    Rotated x = sixj_mp(table_for(r), s, level);
    p.value = x.value.is_zero() ? kNaN : growth_value(to_log_complex(x), r);
    double theta = std::abs(kPi - p.angle);
    p.reference = regular_reference_volume(theta);
    p.in_range = theta > 0.0 && theta < kPi / 3.0 && std::isfinite(p.value);
  });
  return out;
}

namespace {

// sin(m x) / sin(x) at x = 2 pi n / r, continuous through sin(x) = 0.
mp::Real weight_ratio(const FactorialTable& t, long m, long n) {
  mp::Real den = t.qint(n);
  if (!den.is_zero()) return t.qint(m * n) / den;
  // x is a multiple of pi: the ratio tends to m (-1)^{(m-1) x / pi}.
  long half_turns = ((2 * n) / t.r) % 2;
  double v = static_cast<double>(m) * (half_turns && (m - 1) % 2 ? -1.0 : 1.0);
  return mp::Real(v);
}

// 6j values {k k k; k k j} for every j used by the chosen range.
std::vector<std::pair<long, Rotated>> doubly_truncated_symbols(const FactorialTable& t, const Level& level, long k,
                                                               JRange range) {
  std::vector<std::pair<long, Rotated>> out;
  const long j_max = 4 * level.r + 1;
  for (long j = 0; j <= j_max; ++j) {
    long entry = j;
    if (range == JRange::Odd) {
      if (j % 2 == 0) continue;
      entry = (j - 1) / 2;
    }
    SixJArgs s{k, k, k, k, k, entry};
    if (!admissible(s, level)) continue;
    out.emplace_back(j, sixj_mp(t, s, level));
  }
  return out;
}

mp::Complex doubly_truncated_total(const FactorialTable& t, const std::vector<std::pair<long, Rotated>>& symbols,
                                   long l, JRange range) {
  mp::Complex total;
  for (const auto& [j, x] : symbols) {
    mp::Real w;
    if (range == JRange::Display) {
      w = weight_ratio(t, 2 * l + 1, 2 * j + 1);
    } else {
      mp::Real den = t.qint(j);
      if (den.is_zero()) continue;  // [j] = 0 at j = r: term dropped
      w = t.qint((j + 1) * (2 * l + 1)) / den;
    }
    total += mp::Complex::rotated(x.value * w, x.m);
  }
  return total;
}

}  // namespace

LogComplex doubly_truncated_sum(const Level& level, long k, long l, JRange range) {
  mp::PrecisionScope scope(precision_bits(level.r));
  const FactorialTable& t = table_for(level.r);
  auto symbols = doubly_truncated_symbols(t, level, k, range);
  return to_log_complex(doubly_truncated_total(t, symbols, l, range));
}

std::vector<ScanPoint> doubly_truncated_scan(const Level& level, long l_min, long l_max, JRange range, int threads) {
  const long r = level.r;
  if ((r - 3) % 3 != 0) throw ValidationError("doubly truncated scan needs (r-3) divisible by 3");
  const long k = (r - 3) / 3;
  const mpfr_prec_t bits = precision_bits(r);
  std::vector<std::pair<long, Rotated>> symbols;
  {
    mp::PrecisionScope scope(bits);
    symbols = doubly_truncated_symbols(table_for(r), level, k, range);
  }
  l_min = std::max<long>(l_min, 0);
  std::vector<ScanPoint> out(std::max<long>(l_max - l_min + 1, 0));
  parallel_for(static_cast<long>(out.size()), threads, bits, [&](long i) {
    long l = l_min + i;
    ScanPoint& p = out[i];
    p.index = l;
    p.angle = 4.0 * kPi * static_cast<double>(l) / static_cast<double>(r);
    LogComplex v = to_log_complex(doubly_truncated_total(table_for(r), symbols, l, range));
    p.value = v.is_zero() ? kNaN : growth_value(v, r);
    double beta = std::fmod(p.angle, kPi);
    p.reference = beta > 0.0 ? doubly_truncated_reference_volume(kPi / 3.0, beta) : kNaN;
    p.in_range = std::isfinite(p.reference) && std::isfinite(p.value);
  });
  return out;
}

}  // namespace hypervol
