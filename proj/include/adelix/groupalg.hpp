#pragma once

#include <string>
#include <vector>

#include "adelix/surface.hpp"
#include "adelix/symbols.hpp"

namespace adelix {

// Finite group given by its multiplication table on 0..n-1.
struct FiniteGroup {
  std::string name;
  std::vector<std::vector<int>> table;
  int identity = 0;

  int order() const { return static_cast<int>(table.size()); }
  int mul(int a, int b) const { return table[a][b]; }
  int inverse(int a) const;
  bool is_abelian() const;
  std::vector<std::vector<int>> conjugacy_classes() const;

  // Validates closure, associativity, identity and inverses.
  static FiniteGroup from_table(std::vector<std::vector<int>> table, std::string name = "G");
  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);  // order 2n
  static FiniteGroup symmetric3();
  static FiniteGroup quaternion8();
  // "C2", "C_5", "S3", "D4", "Q8".
  static FiniteGroup builtin(const std::string& name);
};

// Element of Q[G] in the group basis.
using GroupRingElem = std::vector<Rat>;
// Element of K[G] for another coefficient type (Laurent series).
template <class T>
using GroupRingOver = std::vector<T>;

GroupRingElem group_ring_mul(const FiniteGroup& G, const GroupRingElem& x, const GroupRingElem& y);

// Simple component M_m(Z) of Q[G], Z = Q[y]/(mu). rho[g] is the image of g,
// an m x m matrix whose entries are polynomials in y reduced mod mu.
struct WedderburnComponent {
  int m = 1;
  Poly mu;  // monic over Q; degree 1 means Z = Q
  std::vector<std::vector<std::vector<Poly>>> rho;
  GroupRingElem idempotent;  // central, in the group basis

  int center_degree() const { return mu.degree(); }
  int dimension() const { return m * m * center_degree(); }
  std::string str() const;
};

struct SplitGroupAlgebra {
  FiniteGroup group;
  std::vector<WedderburnComponent> components;
  std::vector<int> dimensions() const;
  std::string str() const;
};

// Raises DoesNotSplit when a noncommutative component has no rational zero
// divisor among the candidates g f and (g + h) f cut down to a corner.
SplitGroupAlgebra wedderburn(const FiniteGroup& G);

// Image of x in component i.
std::vector<std::vector<Poly>> project(const SplitGroupAlgebra& A, int i, const GroupRingElem& x);

// Per-component determinant, an element of Z_i^x as a polynomial in y.
struct DetVector {
  std::vector<Poly> values;
  bool operator==(const DetVector& b) const;
  std::string str() const;
};
using GroupMatrix = std::vector<std::vector<GroupRingElem>>;
DetVector det_map(const GroupMatrix& x, const SplitGroupAlgebra& A);
GroupMatrix group_matrix_mul(const FiniteGroup& G, const GroupMatrix& x, const GroupMatrix& y);

// Matrices over F[G][t, 1/t] for F = Q, F_p or Q_p; components must have
// center Q.
using LaurentGroupMatrix = std::vector<std::vector<GroupRingOver<Laurent>>>;
std::vector<Laurent> det_map(const LaurentGroupMatrix& x, const SplitGroupAlgebra& A);
LMatrix project(const SplitGroupAlgebra& A, int i, const LaurentGroupMatrix& x);

// Componentwise symbols of a word with entries in units of F((t))[G]. In a
// component with m > 1 one entry of every pair must project to a scalar
// matrix c, and the pair is evaluated as {c, det} (or {det, c}).
using GroupWord = SymbolWord<GroupRingOver<Laurent>>;
std::vector<Scalar> morita_tame(const GroupWord& w, const SplitGroupAlgebra& A);
// Same with Kato's residue over Q_q{{t}} (series coefficients in the
// p-adic field), to relative precision n.
std::vector<Scalar> morita_kato(const GroupWord& w, const SplitGroupAlgebra& A, int n);

// First Chern idele per component of the Q[G]-bundle with transition lambda
// (whose determinant is the component at every finite curve).
std::vector<Codim1Idele> equivariant_c1(const SplitGroupAlgebra& A, const LaurentGroupMatrix& lambda,
                                        const std::vector<BasisChoice>& bases = {});

}  // namespace adelix
