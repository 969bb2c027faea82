#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adelix/loopext.hpp"

namespace adelix {

// Vector bundle on P^1 over a base ring (field, Z or F_p[s]) glued from
// R[t^{-1}]^n and the lattice R[t]^n g. Row vectors throughout, so H^0 is
// R[t^{-1}]^n intersected with R[t]^n g and g = t^{-d} gives O(d).
struct HorrocksBundle {
  RingPtr base;
  int rank = 0;
  LMatrix g, ginv;

  // g must have an exact inverse over base[t, 1/t], i.e. det g = c t^k
  // with c a unit of the base.
  static HorrocksBundle from_matrix(const LMatrix& g);
  static HorrocksBundle line(RingPtr base, int d);  // O(d)
  std::string str() const;
};

struct ModuleReport {
  int rank = 0;
  std::vector<Scalar> torsion;  // non-unit invariant factors
  std::string str() const;
};

struct CohomologyReport {
  ModuleReport h0, h1;
  int euler = 0;                // rank of h0 minus rank of h1
  std::optional<Scalar> torsion_order;  // product of the h1 torsion, if any
  int window = 0;               // t-degree bound actually used
};

// Exact Cech cohomology from the degree bounds of g^{-1}; the report is
// recomputed with window + step and WindowUnstable is raised on a mismatch.
CohomologyReport cech_cohomology(const HorrocksBundle& B, int window = 0);

struct BirkhoffSplit {
  LMatrix A;              // GL_n(k[t])
  std::vector<int> type;  // a_1 >= ... >= a_n
  LMatrix C;              // GL_n(k[1/t])
};
// g = A diag(t^{a_i}) C over a field. The bundle is the sum of O(-a_i).
BirkhoffSplit birkhoff_split(const HorrocksBundle& B);

// Cohomology dimensions of the split bundle: h0 = sum max(1 - a, 0),
// h1 = sum max(a - 1, 0).
std::pair<int, int> split_cohomology(const std::vector<int>& type);

// -k where det g = c t^k.
int bhs_degree(const HorrocksBundle& B);
// Additive degree of a block sum.
HorrocksBundle direct_sum(const HorrocksBundle& a, const HorrocksBundle& b);

// Fiber at t = 1 with basis g(1)^{-1} e (rows).
SMatrix restrict_at_one(const HorrocksBundle& B);

// det R Gamma as (grading, scalar). The scalar compares the echelon bases of
// H^0 and of the image in H^1(O(-N)^n) with Omega(L / t^N L0); it is given
// for field bases. Over Z or F_p[s] only the grading and h1 torsion are given.
struct DetLine {
  int grading = 0;
  std::optional<Scalar> scalar;
  std::vector<Scalar> torsion;
  std::string str() const;
};
DetLine det_of_cohomology(const HorrocksBundle& B, int extra_depth = 0);

// Random A in GL_n(R[t]) and C in GL_n(R[1/t]) as products of transvections.
struct LoopPair {
  LMatrix m, minv;
};
template <class Rng>
LoopPair random_chart_change(Rng& rng, RingPtr R, int n, bool positive, int steps = 3, int maxdeg = 2);

}  // namespace adelix

#include "adelix/bundles_random.hpp"
