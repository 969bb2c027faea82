#pragma once

#include <vector>

#include "adelix/matrix.hpp"
#include "adelix/ring.hpp"

namespace adelix {

using SMatrix = Matrix<Scalar>;

SMatrix zero_matrix(RingPtr r, int rows, int cols);
SMatrix identity_matrix(RingPtr r, int n);
SMatrix int_matrix(RingPtr r, const std::vector<std::vector<long>>& rows);

// Determinant over a field, a local Galois ring, Z or F_p[s].
Scalar det(SMatrix m);

// Reduced row echelon form over a field; pivots are the pivot columns.
struct Echelon {
  SMatrix rref;
  std::vector<int> pivots;
};
Echelon row_echelon(SMatrix m);
int rank(const SMatrix& m);
// Basis (as rows) of {x : M x = 0}, over a field.
SMatrix kernel(const SMatrix& m);

// Invariant factors d_1 | d_2 | ... (nonzero only) over a Euclidean ring,
// and the rank.
struct SmithForm {
  std::vector<Scalar> invariants;
  int rank = 0;
};
SmithForm smith_form(SMatrix m);

// Normalized associate: positive over Z, monic over F_p[s], 1 in a field.
Scalar normalize_associate(const Scalar& a);

}  // namespace adelix
