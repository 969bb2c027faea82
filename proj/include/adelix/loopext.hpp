#pragma once

#include <string>
#include <vector>

#include "adelix/laurent.hpp"
#include "adelix/linalg.hpp"
#include "adelix/symbols.hpp"

namespace adelix {

using LMatrix = Matrix<Laurent>;

LMatrix laurent_identity(RingPtr r, int n);
LMatrix laurent_diagonal(const std::vector<Laurent>& d);
// Inverse through the adjugate; the determinant must be a unit of A((t)).
LMatrix laurent_inverse(const LMatrix& g, int rel_prec = kDefaultSeriesPrec);

// The lattice L = L0 * g^{-1} in A((t))^n (row vectors), L0 = A[[t]]^n.
// A is a field or a local Galois ring Z/p^m; depth is the least N >= 0 with
// t^N L0 in L in t^{-N} L0.
struct LatticeFrame {
  LMatrix g, ginv;
  int depth = 0;
};
LatticeFrame lattice_frame(const LMatrix& g, const LMatrix& ginv);
LatticeFrame lattice_frame(const LMatrix& g);

// An A-basis of L / t^N L0 in reduced echelon form. Columns are ordered by
// exponent, then by component.
struct QuotientBasis {
  int n = 0, N = 0;
  std::vector<std::vector<Laurent>> vectors;
  int dim() const { return static_cast<int>(vectors.size()); }
  std::string str() const;
};
QuotientBasis quotient_basis(const LatticeFrame& L, int N);

// Element (g, phi_g) of the central extension of GL_n(A((t))) by A^x.
// phi_g = c * Omega(L0 g^{-1}) / Omega(L0), where Omega(L) is the top wedge
// of the echelon basis of L modulo a deep t^W L0 (independent of W).
struct HElement {
  LMatrix g, ginv;
  Scalar c;

  static HElement identity(RingPtr r, int n);
  // Fixed lift with phi scalar c (canonical when g in GL_n(A[[t]]) and c = 1).
  static HElement lift(const LMatrix& g, const LMatrix& ginv, const Scalar& c);
  static HElement lift(const LMatrix& g, const LMatrix& ginv);
  int rank() const { return g.rows(); }
};

// The transport scalar of r(g^{-1}) on Omega(L0 h^{-1}) / Omega(L0);
// pad enlarges every window and must not change the result.
Scalar h_cocycle(const LMatrix& g, const LMatrix& ginv, const LMatrix& h, const LMatrix& hinv, int pad = 1);
HElement h_mul(const HElement& x, const HElement& y, int pad = 1);
HElement h_inv(const HElement& x, int pad = 1);
// x y x^{-1} y^{-1}; the matrix part must commute.
Scalar h_commutator(const HElement& x, const HElement& y, int pad = 1);

// Commutator of the lifts of diag(a, a^{-1}, 1) and diag(b, 1, b^{-1}).
Scalar boundary_pair(const Laurent& a, const Laurent& b, int pad = 1);
Scalar boundary(const LaurentWord& w, int pad = 1);

// Boundary for Q_q{{t}} computed through lattices over W_m(F_q)((t)):
// x_i = p^{M_i} s_i, the lattice engine handles {s_1, s_2} and the p-power
// part is p^{M_2 w_1 - M_1 w_2}, w_i the reduction valuation of s_i.
Scalar boundary_padic_pair(const TwoDim& x1, const TwoDim& x2, int m, int pad = 1);
Scalar boundary_padic(const TwoDimWord& w, int m, int pad = 1);

template <class T>
struct Transvection {
  int i = 0, j = 0;  // e_ij(a) = 1 + a E_ij, i != j
  T a;
};

// Word of transvections whose ordered product is M (det M = 1 exactly).
std::vector<Transvection<Scalar>> elementary_factor(const SMatrix& M);
std::vector<Transvection<Laurent>> elementary_factor(const LMatrix& M);
SMatrix recompose(const std::vector<Transvection<Scalar>>& w, RingPtr r, int n);
LMatrix recompose(const std::vector<Transvection<Laurent>>& w, RingPtr r, int n);

}  // namespace adelix
