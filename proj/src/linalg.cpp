#include <optional>
#include "adelix/linalg.hpp"

namespace adelix {

SMatrix zero_matrix(RingPtr r, int rows, int cols) { return SMatrix(rows, cols, Scalar::zero(r)); }

SMatrix identity_matrix(RingPtr r, int n) { return SMatrix::identity(n, Scalar::zero(r), Scalar::one(r)); }

SMatrix int_matrix(RingPtr r, const std::vector<std::vector<long>>& rows) {
  int n = static_cast<int>(rows.size()), m = n ? static_cast<int>(rows[0].size()) : 0;
  SMatrix a = zero_matrix(r, n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = Scalar::from_long(r, rows[i][j]);
  return a;
}

namespace {

// Index of the row in [from, rows) whose entry in column c has the smallest
// Euclidean size, or -1 when the column vanishes there.
int best_row(const SMatrix& m, int c, int from) {
  int piv = -1;
  long best = 0;
  for (int i = from; i < m.rows(); ++i) {
    if (m(i, c).is_zero()) continue;
    long s = m(i, c).norm_size();
    if (piv < 0 || s < best) piv = i, best = s;
  }
  return piv;
}

}  // namespace

Scalar det(SMatrix m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  RingPtr R = m.zero().ring();
  int n = m.rows();
  Scalar d = Scalar::one(R);
  for (int c = 0; c < n; ++c) {
    // Euclidean reduction of column c below the diagonal
    while (true) {
      int piv = best_row(m, c, c);
      if (piv < 0) return Scalar::zero(R);
      if (piv != c) {
        m.swap_rows(piv, c);
        d = -d;
      }
      bool clean = true;
      for (int i = c + 1; i < n; ++i) {
        if (m(i, c).is_zero()) continue;
        Scalar q, r;
        m(i, c).divmod(m(c, c), q, r);
        for (int j = c; j < n; ++j) m(i, j) -= q * m(c, j);
        if (!m(i, c).is_zero()) clean = false;
      }
      if (clean) break;
    }
    d = d * m(c, c);
  }
  return d;
}

Echelon row_echelon(SMatrix m) {
  RingPtr R = m.zero().ring();
  if (!R->is_field()) throw DomainError("row echelon form needs a field, got " + R->name);
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    m.swap_rows(p, r);
    Scalar inv = m(r, c).inv();
    for (int j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return {m, piv};
}

int rank(const SMatrix& m) {
  RingPtr R = m.zero().ring();
  if (R->is_field()) return static_cast<int>(row_echelon(m).pivots.size());
  return smith_form(m).rank;
}

SMatrix kernel(const SMatrix& m) {
  RingPtr R = m.zero().ring();
  Echelon e = row_echelon(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (int c : e.pivots) is_piv[c] = true;
  std::vector<int> free;
  for (int c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  SMatrix k = zero_matrix(R, static_cast<int>(free.size()), m.cols());
  for (size_t f = 0; f < free.size(); ++f) {
    k(static_cast<int>(f), free[f]) = Scalar::one(R);
    for (size_t r = 0; r < e.pivots.size(); ++r) k(static_cast<int>(f), e.pivots[r]) = -e.rref(static_cast<int>(r), free[f]);
  }
  return k;
}

Scalar normalize_associate(const Scalar& a) {
  RingPtr R = a.ring();
  if (a.is_zero()) return a;
  switch (R->kind) {
    case RingKind::Integers: return a.rat() < 0 ? -a : a;
    case RingKind::FpPoly: return a * Scalar::from_coeffs(R, {a.coeffs().back()}).inv();
    default: return R->is_field() ? Scalar::one(R) : a;
  }
}

namespace {

Scalar reduce_mod(const Scalar& x, const Scalar& N) {
  Scalar q, r;
  x.divmod(N, q, r);
  return r;
}

Scalar euclid_gcd(Scalar a, Scalar b) {
  while (!b.is_zero()) {
    Scalar q, r;
    a.divmod(b, q, r);
    a = b;
    b = r;
  }
  return a;
}

// Fraction-free elimination with full pivoting. Returns the rank r and the
// last pivot, which is +-an r x r minor; all invariant factors divide it.
std::pair<int, Scalar> bareiss_rank_minor(SMatrix m) {
  RingPtr R = m.zero().ring();
  int rows = m.rows(), cols = m.cols();
  Scalar prev = Scalar::one(R);
  int k = 0;
  for (; k < rows && k < cols; ++k) {
    int pi = -1, pj = -1;
    long best = 0;
    for (int i = k; i < rows; ++i)
      for (int j = k; j < cols; ++j) {
        if (m(i, j).is_zero()) continue;
        long s = m(i, j).norm_size();
        if (pi < 0 || s < best) pi = i, pj = j, best = s;
      }
    if (pi < 0) break;
    m.swap_rows(pi, k);
    for (int i = 0; i < rows; ++i) std::swap(m(i, pj), m(i, k));
    for (int i = k + 1; i < rows; ++i) {
      for (int j = k + 1; j < cols; ++j) {
        Scalar q, r;
        (m(k, k) * m(i, j) - m(i, k) * m(k, j)).divmod(prev, q, r);
        m(i, j) = q;
      }
      m(i, k) = Scalar::zero(R);
    }
    prev = m(k, k);
  }
  return {k, prev};
}

}  // namespace

SmithForm smith_form(SMatrix m) {
  RingPtr R = m.zero().ring();
  if (!R->is_euclidean()) throw DomainError("Smith form needs a Euclidean ring, got " + R->name);
  int rows = m.rows(), cols = m.cols();
  int target = std::min(rows, cols);
  // Over Z and F_p[s] the elimination runs modulo a multiple N of every
  // invariant factor that none of them reaches, which keeps entries bounded.
  std::optional<Scalar> N;
  if (!R->is_field()) {
    auto [r, minor] = bareiss_rank_minor(m);
    if (r == 0) return {{}, 0};
    target = r;
    Scalar bump = R->kind == RingKind::Integers ? Scalar::from_long(R, 2) : Scalar::from_coeffs(R, {Int(0), Int(1)});
    N = minor * bump;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = reduce_mod(m(i, j), *N);
  }
  auto red = [&](Scalar& x) {
    if (N) x = reduce_mod(x, *N);
  };
  std::vector<Scalar> diag;
  int t = 0;
  while (t < target) {
    // choose the smallest nonzero entry in the trailing block
    int pi = -1, pj = -1;
    long best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (m(i, j).is_zero()) continue;
        long s = m(i, j).norm_size();
        if (pi < 0 || s < best) pi = i, pj = j, best = s;
      }
    if (pi < 0) break;
    m.swap_rows(pi, t);
    for (int i = 0; i < rows; ++i) std::swap(m(i, pj), m(i, t));
    bool done = false;
    while (!done) {
      done = true;
      for (int i = t + 1; i < rows; ++i) {
        if (m(i, t).is_zero()) continue;
        Scalar q, r;
        m(i, t).divmod(m(t, t), q, r);
        for (int j = t; j < cols; ++j) {
          m(i, j) -= q * m(t, j);
          red(m(i, j));
        }
        if (!m(i, t).is_zero()) {
          m.swap_rows(i, t);
          done = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (m(t, j).is_zero()) continue;
        Scalar q, r;
        m(t, j).divmod(m(t, t), q, r);
        for (int i = t; i < rows; ++i) {
          m(i, j) -= q * m(i, t);
          red(m(i, j));
        }
        if (!m(t, j).is_zero()) {
          for (int i = 0; i < rows; ++i) std::swap(m(i, j), m(i, t));
          done = false;
        }
      }
      if (done) {
        // divisibility of the rest of the block
        for (int i = t + 1; i < rows && done; ++i)
          for (int j = t + 1; j < cols && done; ++j) {
            if (m(i, j).is_zero()) continue;
            Scalar q, r;
            m(i, j).divmod(m(t, t), q, r);
            if (!r.is_zero()) {
              for (int jj = t; jj < cols; ++jj) {
                m(t, jj) += m(i, jj);
                red(m(t, jj));
              }
              done = false;
            }
          }
      }
    }
    diag.push_back(normalize_associate(N ? euclid_gcd(m(t, t), *N) : m(t, t)));
    ++t;
  }
  if (N && t != target) throw DomainError("modular Smith form lost rank");
  return {diag, static_cast<int>(diag.size())};
}

}  // namespace adelix
