#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hypervol/numerics.hpp"

namespace hypervol {

enum class EdgeKind { Angle, Length };

// One of the six edge slots: a dihedral angle, or the length of a common
// perpendicular between two ultra-parallel faces.
struct EdgeParameter {
  EdgeKind kind = EdgeKind::Angle;
  double value = 0.0;

  static EdgeParameter angle(double a) { return {EdgeKind::Angle, a}; }
  static EdgeParameter length(double l) { return {EdgeKind::Length, l}; }
  bool is_length() const { return kind == EdgeKind::Length; }
  // exp(i alpha) or exp(-l).
  cplx encoded() const;
};

// Slot k (0-based, a_{k+1}) sits on the face pair kFacePairs[k].
// a1 (1,2), a2 (1,3), a3 (2,3), a4 (3,4), a5 (2,4), a6 (1,4).
inline constexpr std::array<std::pair<int, int>, 6> kFacePairs = {
    {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {1, 3}, {0, 3}}};

// Slot index for an unordered pair of distinct faces in {0,1,2,3}.
int slot_of_pair(int i, int j);
// Slot of the edge opposite to slot k.
inline int opposite_slot(int k) { return (k + 3) % 6; }

struct TetrahedronShape {
  std::array<EdgeParameter, 6> params{};

  static TetrahedronShape all_angles(double a);
  unsigned length_mask() const;
  std::array<cplx, 6> encoded() const;
  // Shape whose faces are relabelled by perm: new face perm[i] is old face i.
  TetrahedronShape permuted(const std::array<int, 4>& perm) const;
  void validate() const;
};

enum class TruncationType { Mild, P4, P14, P56, P456, P2356 };

std::string to_string(TruncationType t);
// Paper-style symbol such as "t|a12356|p4".
std::string type_symbol(TruncationType t);

struct Classification {
  TruncationType type = TruncationType::Mild;
  // Face relabelling taking the shape's Length slots onto the canonical ones.
  std::array<int, 4> perm{0, 1, 2, 3};
};

// Canonical Length slots per type (0-based).
unsigned canonical_mask(TruncationType t);

Classification classify(const TetrahedronShape& shape);
Classification classify_mask(unsigned length_mask);

using GramMatrix = Eigen::Matrix4d;
GramMatrix gram_matrix(const TetrahedronShape& shape);

struct GramSignature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool hyperbolic() const { return positive == 3 && negative == 1; }
  bool euclidean_degenerate() const { return positive == 3 && zero == 1; }
};
GramSignature gram_signature(const TetrahedronShape& shape, double tol = 1e-9);

struct QCoefficients {
  cplx q0, q1, q2;
};
QCoefficients q_coefficients(const TetrahedronShape& shape);

// The eight-term dilogarithm combination U(a_1..a_6, z).
cplx u_function(const TetrahedronShape& shape, cplx z);
// z dU/dz.
cplx z_du_dz(const TetrahedronShape& shape, cplx z);

struct ZRoots {
  cplx minus, plus;
  bool double_root = false;
};
ZRoots z_roots(const TetrahedronShape& shape);

cplx v_function(const TetrahedronShape& shape);

// Everything the gluing solver needs from one tetrahedron.
struct TetraEvaluation {
  TruncationType type = TruncationType::Mild;
  cplx v{};
  std::array<cplx, 6> a_dv_da{};     // a_k dV/da_k; meaningful on Length slots
  double volume = 0.0;
  std::array<double, 6> angle{};     // recovered angle on Length slots, in (0, pi)
  // d(angle_k)/d(l_m) for Length slots k, m.
  std::array<std::array<double, 6>, 6> dangle_dlength{};
  bool euclidean_degenerate = false;
  double stationarity_residual = 0.0;
};

TetraEvaluation evaluate(const TetrahedronShape& shape, bool need_hessian = false);

double volume(const TetrahedronShape& shape);
double angle_at_length_edge(const TetrahedronShape& shape, int slot);
// a_k dV/da_k by the envelope formula.
cplx a_dv_da(const TetrahedronShape& shape, int slot);
// Same quantity by Richardson-extrapolated central differences.
cplx a_dv_da_numeric(const TetrahedronShape& shape, int slot, double h = 1e-5);

}  // namespace hypervol
