#include "hypervol/tetra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hypervol/error.hpp"

namespace hypervol {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

// A term coef * Li2(sign * prod_{k in mask} a_k * z) of U.
struct Term {
  int coef;
  int sign;
  unsigned mask;
};

constexpr unsigned bits(std::initializer_list<int> slots) {
  unsigned m = 0;
  for (int s : slots) m |= 1u << s;
  return m;
}

const std::array<Term, 8> kTerms = {{
    {+1, +1, 0u},
    {+1, +1, bits({0, 1, 3, 4})},
    {+1, +1, bits({0, 2, 3, 5})},
    {+1, +1, bits({1, 2, 4, 5})},
    {-1, -1, bits({0, 1, 2})},
    {-1, -1, bits({0, 4, 5})},
    {-1, -1, bits({1, 3, 5})},
    {-1, -1, bits({2, 3, 4})},
}};

cplx monomial(const std::array<cplx, 6>& a, const Term& t) {
  cplx c = static_cast<double>(t.sign);
  for (int k = 0; k < 6; ++k)
    if (t.mask & (1u << k)) c *= a[k];
  return c;
}

// Terms sharing the same monomial value are merged so that exactly
// cancelling pairs (ideal vertices) never produce log(0).
struct Group {
  cplx c;
  double coef = 0.0;
  std::array<double, 6> wk{};
  std::array<std::array<double, 6>, 6> wkm{};
};

std::vector<Group> merged_groups(const std::array<cplx, 6>& a) {
  std::vector<Group> groups;
  for (const Term& t : kTerms) {
    cplx c = monomial(a, t);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return std::abs(g.c - c) <= 1e-11; });
    if (it == groups.end()) {
      groups.push_back(Group{c});
      it = groups.end() - 1;
    }
    it->coef += t.coef;
    for (int k = 0; k < 6; ++k) {
      if (!(t.mask & (1u << k))) continue;
      it->wk[k] += t.coef;
      for (int m = 0; m < 6; ++m)
        if (t.mask & (1u << m)) it->wkm[k][m] += t.coef;
    }
  }
  return groups;
}


struct RootData {
  cplx w;                                // U - zU_z log z
  std::array<cplx, 6> t{};               // a_k dU/da_k
  std::array<std::array<cplx, 6>, 6> d{};  // d t_k / d log a_m along the root
  double residual = 0.0;
};

RootData at_root(const std::vector<Group>& groups, cplx z, unsigned need_mask, bool hessian) {
  RootData out;
  cplx u = 0.0, zuz = 0.0;
  std::vector<cplx> lg(groups.size()), ws(groups.size());
  // An exact pole 1 - cz = 0 only occurs at z = 1 for an ideal vertex, where
  // log z = 0 kills the zU_z log z term and the pole is dropped from U_z.
  bool pole = false;
  for (size_t g = 0; g < groups.size(); ++g) {
    const Group& gr = groups[g];
    bool needed = gr.coef != 0.0;
    for (int k = 0; k < 6; ++k)
      if ((need_mask & (1u << k)) && gr.wk[k] != 0.0) needed = true;
    if (!needed) continue;
    cplx cz = gr.c * z;
    cplx d = 1.0 - cz;
    if (gr.coef != 0.0) u += gr.coef * dilog(cz);
    if (d == cplx(0.0, 0.0)) {
      for (int k = 0; k < 6; ++k)
        if ((need_mask & (1u << k)) && gr.wk[k] != 0.0)
          throw InfeasibleError("logarithmic pole in the derivative along a Length slot");
      pole = true;
      continue;
    }
    lg[g] = -std::log(d);
    ws[g] = cz / d;
    if (gr.coef != 0.0) zuz += gr.coef * lg[g];
  }
  double n = std::round(zuz.imag() / (2.0 * kPi));
  out.residual = std::abs(zuz - cplx(0.0, 2.0 * kPi * n));
  cplx logz = std::log(z);
  out.w = (logz == cplx(0.0, 0.0)) ? u : u - cplx(0.0, 2.0 * kPi * n) * logz;

  for (int k = 0; k < 6; ++k) {
    if (!(need_mask & (1u << k))) continue;
    for (size_t g = 0; g < groups.size(); ++g)
      if (groups[g].wk[k] != 0.0) out.t[k] += groups[g].wk[k] * lg[g];
  }
  if (!hessian) return out;

  cplx A = 0.0;
  std::array<cplx, 6> Ak{};
  for (size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].coef != 0.0) A += groups[g].coef * ws[g];
    for (int k = 0; k < 6; ++k)
      if ((need_mask & (1u << k)) && groups[g].wk[k] != 0.0) Ak[k] += groups[g].wk[k] * ws[g];
  }
  for (int k = 0; k < 6; ++k) {
    if (!(need_mask & (1u << k))) continue;
    for (int m = 0; m < 6; ++m) {
      if (!(need_mask & (1u << m))) continue;
      cplx akm = 0.0;
      for (size_t g = 0; g < groups.size(); ++g)
        if (groups[g].wkm[k][m] != 0.0) akm += groups[g].wkm[k][m] * ws[g];
      out.d[k][m] = pole ? akm : akm - Ak[k] * Ak[m] / A;
    }
  }
  return out;
}

double reduce_mod_pi(double x) {
  double y = std::fmod(x, kPi);
  if (y <= 0.0) y += kPi;
  return y;
}

std::string mask_string(unsigned mask) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int k = 0; k < 6; ++k)
    if (mask & (1u << k)) {
      os << (first ? "" : ",") << (k + 1);
      first = false;
    }
  os << "}";
  return os.str();
}

}  // namespace

cplx EdgeParameter::encoded() const {
  return kind == EdgeKind::Angle ? std::polar(1.0, value) : cplx(std::exp(-value), 0.0);
}

int slot_of_pair(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 6; ++k)
    if (kFacePairs[k].first == i && kFacePairs[k].second == j) return k;
  throw ValidationError("slot_of_pair: faces must be distinct and in 0..3");
}

TetrahedronShape TetrahedronShape::all_angles(double a) {
  TetrahedronShape s;
  s.params.fill(EdgeParameter::angle(a));
  return s;
}

unsigned TetrahedronShape::length_mask() const {
  unsigned m = 0;
  for (int k = 0; k < 6; ++k)
    if (params[k].is_length()) m |= 1u << k;
  return m;
}

std::array<cplx, 6> TetrahedronShape::encoded() const {
  std::array<cplx, 6> a;
  for (int k = 0; k < 6; ++k) a[k] = params[k].encoded();
  return a;
}

TetrahedronShape TetrahedronShape::permuted(const std::array<int, 4>& perm) const {
  TetrahedronShape out;
  for (int k = 0; k < 6; ++k) {
    auto [i, j] = kFacePairs[k];
    out.params[slot_of_pair(perm[i], perm[j])] = params[k];
  }
  return out;
}

void TetrahedronShape::validate() const {
  for (int k = 0; k < 6; ++k) {
    const auto& p = params[k];
    if (!std::isfinite(p.value))
      throw ValidationError("edge parameter a" + std::to_string(k + 1) + " is not finite");
    if (p.kind == EdgeKind::Angle && !(p.value > 0.0 && p.value < kPi))
      throw ValidationError("angle a" + std::to_string(k + 1) + " outside (0, pi)");
    if (p.kind == EdgeKind::Length && !(p.value > 0.0))
      throw ValidationError("length a" + std::to_string(k + 1) + " must be positive");
  }
}

std::string to_string(TruncationType t) {
  switch (t) {
    case TruncationType::Mild: return "Mild";
    case TruncationType::P4: return "P4";
    case TruncationType::P14: return "P14";
    case TruncationType::P56: return "P56";
    case TruncationType::P456: return "P456";
    case TruncationType::P2356: return "P2356";
  }
  return "?";
}

unsigned canonical_mask(TruncationType t) {
  switch (t) {
    case TruncationType::Mild: return 0u;
    case TruncationType::P4: return bits({3});
    case TruncationType::P14: return bits({0, 3});
    case TruncationType::P56: return bits({4, 5});
    case TruncationType::P456: return bits({3, 4, 5});
    case TruncationType::P2356: return bits({1, 2, 4, 5});
  }
  return 0u;
}

std::string type_symbol(TruncationType t) {
  unsigned m = canonical_mask(t);
  std::string a = "t|a", p;
  for (int k = 0; k < 6; ++k) (m & (1u << k) ? p : a) += std::to_string(k + 1);
  return p.empty() ? a : a + "|p" + p;
}

Classification classify_mask(unsigned mask) {
  static const TruncationType kTypes[] = {TruncationType::Mild, TruncationType::P4,
                                          TruncationType::P14, TruncationType::P56,
                                          TruncationType::P456, TruncationType::P2356};
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    unsigned image = 0;
    for (int k = 0; k < 6; ++k)
      if (mask & (1u << k)) {
        auto [i, j] = kFacePairs[k];
        image |= 1u << slot_of_pair(perm[i], perm[j]);
      }
    for (TruncationType t : kTypes)
      if (image == canonical_mask(t)) return {t, perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw UnsupportedError("unsupported truncation pattern: Length slots " + mask_string(mask));
}

Classification classify(const TetrahedronShape& shape) { return classify_mask(shape.length_mask()); }

GramMatrix gram_matrix(const TetrahedronShape& shape) {
  GramMatrix g = GramMatrix::Identity();
  for (int k = 0; k < 6; ++k) {
    const auto& p = shape.params[k];
    double v = p.kind == EdgeKind::Angle ? -std::cos(p.value) : -std::cosh(p.value);
    auto [i, j] = kFacePairs[k];
    g(i, j) = g(j, i) = v;
  }
  return g;
}

GramSignature gram_signature(const TetrahedronShape& shape, double tol) {
  Eigen::SelfAdjointEigenSolver<GramMatrix> es(gram_matrix(shape), Eigen::EigenvaluesOnly);
  GramSignature s;
  for (int i = 0; i < 4; ++i) {
    double l = es.eigenvalues()[i];
    if (l > tol) ++s.positive;
    else if (l < -tol) ++s.negative;
    else ++s.zero;
  }
  return s;
}

QCoefficients q_coefficients(const TetrahedronShape& shape) {
  auto a = shape.encoded();
  const cplx &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a5 = a[4], &a6 = a[5];
  cplx P = a1 * a2 * a3 * a4 * a5 * a6;
  auto d = [](cplx x) { return x - 1.0 / x; };
  QCoefficients q;
  q.q0 = 1.0 + a1 * a2 * a3 + a1 * a5 * a6 + a2 * a4 * a6 + a3 * a4 * a5 + a1 * a2 * a4 * a5 +
         a1 * a3 * a4 * a6 + a2 * a3 * a5 * a6;
  q.q1 = -P * (d(a1) * d(a4) + d(a2) * d(a5) + d(a3) * d(a6));
  q.q2 = P * (a1 * a4 + a2 * a5 + a3 * a6 + a1 * a2 * a6 + a1 * a3 * a5 + a2 * a3 * a4 +
              a4 * a5 * a6 + P);
  return q;
}

cplx u_function(const TetrahedronShape& shape, cplx z) {
  auto a = shape.encoded();
  cplx sum = 0.0;
  for (size_t i = 0; i < kTerms.size(); ++i) {
    cplx w = monomial(a, kTerms[i]) * z;
    if (w.imag() == 0.0 && w.real() > 1.0)
      throw ValidationError("u_function: term " + std::to_string(i + 1) +
                            " lies on the dilogarithm branch cut");
    sum += static_cast<double>(kTerms[i].coef) * dilog(w);
  }
  return sum;
}

cplx z_du_dz(const TetrahedronShape& shape, cplx z) {
  auto a = shape.encoded();
  cplx sum = 0.0;
  for (const Term& t : kTerms) sum += static_cast<double>(t.coef) * -std::log(1.0 - monomial(a, t) * z);
  return sum;
}

ZRoots z_roots(const TetrahedronShape& shape) {
  QCoefficients q = q_coefficients(shape);
  if (std::abs(q.q2) < 1e-300) throw ValidationError("degenerate shape: q2 = 0");
  auto a = shape.encoded();
  cplx P = a[0] * a[1] * a[2] * a[3] * a[4] * a[5];
  // q1^2 - 4 q0 q2 = 16 det(G) P^2; this square root keeps the volume
  // continuous and positive across the hyperbolic region.
  double det = gram_matrix(shape).determinant();
  cplx s = -4.0 * P * I * std::sqrt(cplx(-det, 0.0));
  ZRoots r;
  r.minus = (-q.q1 - s) / (2.0 * q.q2);
  r.plus = (-q.q1 + s) / (2.0 * q.q2);
  r.double_root = std::abs(det) < 1e-14;
  return r;
}

TetraEvaluation evaluate(const TetrahedronShape& shape, bool need_hessian) {
  shape.validate();
  TetraEvaluation ev;
  ev.type = classify(shape).type;
  GramSignature sig = gram_signature(shape);
  if (sig.euclidean_degenerate()) {
    ev.euclidean_degenerate = true;
    return ev;
  }
  if (!sig.hyperbolic()) {
    std::ostringstream os;
    os << "non-realizable shape: Gram signature (" << sig.positive << "," << sig.negative
       << ") with " << sig.zero << " null direction(s)";
    throw InfeasibleError(os.str());
  }
  auto a = shape.encoded();
  unsigned lmask = shape.length_mask();
  auto groups = merged_groups(a);
  ZRoots roots = z_roots(shape);
  RootData m = at_root(groups, roots.minus, lmask, need_hessian);
  RootData p = at_root(groups, roots.plus, lmask, need_hessian);
  ev.stationarity_residual = std::max(m.residual, p.residual);
  const cplx quarter_i(0.0, 0.25);
  ev.v = quarter_i * (m.w - p.w);
  cplx vol = -ev.v;
  for (int k = 0; k < 6; ++k) {
    if (!(lmask & (1u << k))) continue;
    ev.a_dv_da[k] = quarter_i * (m.t[k] - p.t[k]);
    vol += ev.a_dv_da[k] * std::log(a[k].real());
    ev.angle[k] = reduce_mod_pi(2.0 * ev.a_dv_da[k].real());
    if (need_hessian)
      for (int j = 0; j < 6; ++j)
        if (lmask & (1u << j)) ev.dangle_dlength[k][j] = -2.0 * (quarter_i * (m.d[k][j] - p.d[k][j])).real();
  }
  ev.volume = vol.real();
  return ev;
}

cplx v_function(const TetrahedronShape& shape) { return evaluate(shape).v; }

double volume(const TetrahedronShape& shape) { return evaluate(shape).volume; }

double angle_at_length_edge(const TetrahedronShape& shape, int slot) {
  if (slot < 0 || slot > 5 || !shape.params[slot].is_length())
    throw ValidationError("angle_at_length_edge: slot a" + std::to_string(slot + 1) + " is not a Length slot");
  return evaluate(shape).angle[slot];
}

cplx a_dv_da(const TetrahedronShape& shape, int slot) {
  auto a = shape.encoded();
  auto groups = merged_groups(a);
  ZRoots roots = z_roots(shape);
  unsigned mask = 1u << slot;
  RootData m = at_root(groups, roots.minus, mask, false);
  RootData p = at_root(groups, roots.plus, mask, false);
  return cplx(0.0, 0.25) * (m.t[slot] - p.t[slot]);
}

cplx a_dv_da_numeric(const TetrahedronShape& shape, int slot, double h) {
  // a d/da = -i d/dalpha on angles and -d/dl on lengths.
  auto central = [&](double step) {
    TetrahedronShape lo = shape, hi = shape;
    lo.params[slot].value -= step;
    hi.params[slot].value += step;
    cplx vlo = v_function(lo), vhi = v_function(hi);
    return (vhi - vlo) / (2.0 * step);
  };
  cplx d = (4.0 * central(h) - central(2.0 * h)) / 3.0;
  return shape.params[slot].is_length() ? -d : -I * d;
}

}  // namespace hypervol
