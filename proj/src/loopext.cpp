#include "adelix/loopext.hpp"

#include <algorithm>
#include <sstream>

namespace adelix {

LMatrix laurent_identity(RingPtr r, int n) {
  return LMatrix::identity(n, Laurent(r), Laurent::constant(Scalar::one(r)));
}

LMatrix laurent_diagonal(const std::vector<Laurent>& d) { return LMatrix::diagonal(d, Laurent(d.at(0).ring())); }

LMatrix laurent_inverse(const LMatrix& g, int rel_prec) {
  RingPtr r = g(0, 0).ring();
  Laurent d = g.det_expand();
  if (!d.is_unit()) throw NotInvertible("loop matrix has a non-unit determinant");
  Laurent di = d.inv(rel_prec);
  LMatrix adj = g.adjugate(Laurent::constant(Scalar::one(r)));
  for (int i = 0; i < adj.rows(); ++i)
    for (int j = 0; j < adj.cols(); ++j) adj(i, j) = adj(i, j) * di;
  return adj;
}

namespace {

using Vec = std::vector<Scalar>;

// Coordinates on t^lo L0 / t^hi L0: column (e - lo) * n + i for t^e in slot i.
struct Window {
  int n, lo, hi;
  int size() const { return n * (hi - lo); }
  int col(int e, int i) const { return (e - lo) * n + i; }
};

int depth_of(const LMatrix& m) {
  int d = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) d = std::max(d, -m(i, j).lo());
  return d;
}

int row_lo(const LMatrix& m, int i) {
  int v = kInfPrec;
  for (int j = 0; j < m.cols(); ++j)
    if (!m(i, j).is_zero()) v = std::min(v, m(i, j).lo());
  return v;
}

// Add c * t^shift * (row i of m) into v, dropping exponents >= w.hi.
void add_row(Vec& v, const Window& w, const LMatrix& m, int i, int shift, const Scalar& c) {
  for (int j = 0; j < m.cols(); ++j) {
    const Laurent& x = m(i, j);
    if (!x.exact() && x.prec() + shift < w.hi)
      throw PrecisionExhausted("loop matrix entry known to t^" + std::to_string(x.prec()) + ", window needs t^" +
                               std::to_string(w.hi - shift));
    for (int k = 0; k < static_cast<int>(x.coeffs().size()); ++k) {
      int e = x.lo() + k + shift;
      if (e >= w.hi) break;
      const Scalar& a = x.coeffs()[k];
      if (a.is_zero()) continue;
      if (e < w.lo) throw DomainError("lattice window too shallow");
      int col = w.col(e, j);
      v[col] = v[col] + c * a;
    }
  }
}

// Spanning set of (t^from L0) * m modulo t^{w.hi} L0.
std::vector<Vec> lattice_gens(const LMatrix& m, const Window& w, int from, RingPtr R) {
  std::vector<Vec> out;
  Scalar one = Scalar::one(R);
  for (int i = 0; i < m.rows(); ++i) {
    int v = row_lo(m, i);
    for (int k = from; v + k < w.hi; ++k) {
      Vec x(w.size(), Scalar::zero(R));
      add_row(x, w, m, i, k, one);
      out.push_back(std::move(x));
    }
  }
  return out;
}

// Gauss-Jordan elimination with unit pivots. Over a local ring the pivot
// columns are those of the reduction mod p; det is the minor of the input
// rows on the pivot columns (meaningful when every row becomes a pivot).
struct Reduced {
  std::vector<int> pivots;
  std::vector<Vec> rows;
  Scalar det;
  bool square = false;
};

Reduced reduce(std::vector<Vec> rows, int ncols, RingPtr R) {
  Reduced out;
  out.det = Scalar::one(R);
  size_t r = 0;
  for (int col = 0; col < ncols && r < rows.size(); ++col) {
    size_t piv = rows.size();
    for (size_t i = r; i < rows.size(); ++i)
      if (rows[i][col].is_unit()) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    if (piv != r) {
      std::swap(rows[piv], rows[r]);
      out.det = -out.det;
    }
    Scalar p = rows[r][col];
    out.det = out.det * p;
    Scalar pi = p.inv();
    for (auto& x : rows[r]) x = x * pi;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      Scalar f = rows[i][col];
      // earlier non-pivot columns may hold nilpotent entries
      for (int c = 0; c < ncols; ++c)
        if (!rows[r][c].is_zero()) rows[i][c] = rows[i][c] - f * rows[r][c];
    }
    out.pivots.push_back(col);
    ++r;
  }
  for (size_t i = r; i < rows.size(); ++i)
    for (auto& x : rows[i])
      if (!x.is_zero()) throw DomainError("lattice quotient is not free over the coefficient ring");
  out.square = r == rows.size();
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

// v * m for a window vector v, as a vector in the window w2.
Vec transport(const Vec& v, const Window& w1, const LMatrix& m, const Window& w2, RingPtr R) {
  Vec out(w2.size(), Scalar::zero(R));
  for (int e = w1.lo; e < w1.hi; ++e)
    for (int i = 0; i < w1.n; ++i) {
      const Scalar& c = v[w1.col(e, i)];
      if (!c.is_zero()) add_row(out, w2, m, i, e, c);
    }
  return out;
}

}  // namespace

LatticeFrame lattice_frame(const LMatrix& g, const LMatrix& ginv) {
  return LatticeFrame{g, ginv, std::max(depth_of(g), depth_of(ginv))};
}

LatticeFrame lattice_frame(const LMatrix& g) { return lattice_frame(g, laurent_inverse(g)); }

QuotientBasis quotient_basis(const LatticeFrame& L, int N) {
  if (N < depth_of(L.g)) throw DomainError("t^" + std::to_string(N) + " L0 is not contained in the lattice");
  RingPtr R = L.g(0, 0).ring();
  int n = L.g.rows();
  Window w{n, std::min(-depth_of(L.ginv), N), N};
  Reduced red = reduce(lattice_gens(L.ginv, w, 0, R), w.size(), R);
  QuotientBasis qb;
  qb.n = n;
  qb.N = N;
  for (auto& row : red.rows) {
    std::vector<Laurent> v;
    for (int i = 0; i < n; ++i) {
      std::vector<Scalar> c;
      for (int e = w.lo; e < w.hi; ++e) c.push_back(row[w.col(e, i)]);
      v.emplace_back(R, w.lo, std::move(c));
    }
    qb.vectors.push_back(std::move(v));
  }
  return qb;
}

std::string QuotientBasis::str() const {
  std::ostringstream os;
  for (auto& v : vectors) {
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].str();
    os << ")\n";
  }
  return os.str();
}

HElement HElement::identity(RingPtr r, int n) {
  LMatrix I = laurent_identity(r, n);
  return HElement{I, I, Scalar::one(r)};
}

HElement HElement::lift(const LMatrix& g, const LMatrix& ginv, const Scalar& c) { return HElement{g, ginv, c}; }

HElement HElement::lift(const LMatrix& g, const LMatrix& ginv) {
  return HElement{g, ginv, Scalar::one(g(0, 0).ring())};
}

Scalar h_cocycle(const LMatrix& g, const LMatrix& ginv, const LMatrix& h, const LMatrix& hinv, int pad) {
  RingPtr R = g(0, 0).ring();
  int n = g.rows();
  int W1 = std::max(depth_of(h), depth_of(hinv)) + pad;
  Window w1{n, -W1, W1};
  // A = L0 h^{-1} in echelon form; B = L0 in the monomial basis
  Reduced A = reduce(lattice_gens(hinv, w1, 0, R), w1.size(), R);
  if (static_cast<int>(A.rows.size()) != n * W1) throw DomainError("loop element has nonzero index");
  int W2 = W1 + depth_of(g) + depth_of(ginv) + pad;
  Window w2{n, -W2, W2};
  std::vector<Vec> E = reduce(lattice_gens(ginv, w2, W1, R), w2.size(), R).rows;
  std::vector<Vec> YA, YB;
  for (auto& v : A.rows) YA.push_back(transport(v, w1, ginv, w2, R));
  for (int e = 0; e < W1; ++e)
    for (int i = 0; i < n; ++i) {
      Vec v(w1.size(), Scalar::zero(R));
      v[w1.col(e, i)] = Scalar::one(R);
      YB.push_back(transport(v, w1, ginv, w2, R));
    }
  YA.insert(YA.end(), E.begin(), E.end());
  YB.insert(YB.end(), E.begin(), E.end());
  Reduced ra = reduce(YA, w2.size(), R), rb = reduce(YB, w2.size(), R);
  if (!ra.square || !rb.square) throw DomainError("transported basis is dependent");
  return ra.det * rb.det.inv();
}

HElement h_mul(const HElement& x, const HElement& y, int pad) {
  Scalar k = h_cocycle(x.g, x.ginv, y.g, y.ginv, pad);
  return HElement{x.g * y.g, y.ginv * x.ginv, x.c * y.c * k};
}

HElement h_inv(const HElement& x, int pad) {
  Scalar k = h_cocycle(x.g, x.ginv, x.ginv, x.g, pad);
  return HElement{x.ginv, x.g, (x.c * k).inv()};
}

Scalar h_commutator(const HElement& x, const HElement& y, int pad) {
  HElement r = h_mul(h_mul(h_mul(x, y, pad), h_inv(x, pad), pad), h_inv(y, pad), pad);
  return r.c;
}

Scalar boundary_pair(const Laurent& a, const Laurent& b, int pad) {
  RingPtr R = a.ring();
  if (b.ring() != R) throw DomainError("boundary of entries over different rings");
  if (!a.is_unit() || !b.is_unit()) throw NotAUnit("boundary entries must be units of the Laurent field");
  bool retry = a.exact() && b.exact();
  for (int rel = 32;; rel *= 2) {
    try {
      Laurent ai = a.inv(rel), bi = b.inv(rel);
      Laurent one = Laurent::constant(Scalar::one(R));
      HElement d = HElement::lift(laurent_diagonal({a, ai, one}), laurent_diagonal({ai, a, one}));
      HElement e = HElement::lift(laurent_diagonal({b, one, bi}), laurent_diagonal({bi, one, b}));
      return h_commutator(d, e, pad);
    } catch (const PrecisionExhausted&) {
      if (!retry || rel >= 1024) throw;
    }
  }
}

Scalar boundary(const LaurentWord& w, int pad) {
  if (w.pairs.empty()) throw DomainError("empty word has no ring; evaluate as 1");
  Scalar acc = Scalar::one(w.pairs[0].a.ring());
  for (auto& p : w.pairs) acc = acc * boundary_pair(p.a, p.b, pad).pow(p.e);
  return acc;
}

Scalar boundary_padic_pair(const TwoDim& x1, const TwoDim& x2, int m, int pad) {
  RingPtr F = x1.field();
  if (x2.field() != F) throw DomainError("boundary of entries over different fields");
  if (std::min(x1.relprec(), x2.relprec()) < m)
    throw PrecisionExhausted("boundary requested mod p^" + std::to_string(m) + " beyond the stored precision");
  const Laurent s1 = x1.with_relprec(m).unit_series(), s2 = x2.with_relprec(m).unit_series();
  Scalar u = boundary_pair(s1, s2, pad);
  long pexp = static_cast<long>(x2.pval()) * s1.valuation() - static_cast<long>(x1.pval()) * s2.valuation();
  return Scalar::padic(F, static_cast<int>(pexp), u.coeffs(), m);
}

Scalar boundary_padic(const TwoDimWord& w, int m, int pad) {
  if (w.pairs.empty()) throw DomainError("empty word has no field; evaluate as 1");
  Scalar acc = Scalar::one(w.pairs[0].a.field());
  for (auto& p : w.pairs) acc = acc * boundary_padic_pair(p.a, p.b, m, pad).pow(p.e);
  return acc;
}

// ---------------------------------------------------------------------------
// Elementary factorization

namespace {

int pivot_rank(const Scalar& x) { return x.ring()->kind == RingKind::PAdic ? x.valuation() : 0; }
int pivot_rank(const Laurent& x) { return x.valuation(); }
Scalar inverse_of(const Scalar& x) { return x.inv(); }
Laurent inverse_of(const Laurent& x) { return x.inv(); }
Laurent one_like(const Laurent& x) { return Laurent::constant(Scalar::one(x.ring())); }
bool is_one_value(const Scalar& x) { return x.is_one(); }
bool is_one_value(const Laurent& x) { return (x - one_like(x)).is_zero(); }

template <class T>
std::vector<Transvection<T>> factor_impl(Matrix<T> M, const T& one) {
  int n = M.rows();
  using W = std::vector<Transvection<T>>;
  W ops;
  auto add_rows = [&](int i, int j, const T& f) {  // row i += f * row j
    for (int c = 0; c < n; ++c)
      if (!M(j, c).is_zero()) M(i, c) = M(i, c) + f * M(j, c);
    ops.push_back({i, j, f});
  };
  for (int j = 0; j < n; ++j) {
    int p = -1;
    for (int i = j; i < n; ++i)
      if (!M(i, j).is_zero() && (p < 0 || pivot_rank(M(i, j)) < pivot_rank(M(p, j)))) p = i;
    if (p < 0) throw NotDetOne("matrix is singular");
    if (p != j && (M(j, j).is_zero() || pivot_rank(M(j, j)) > pivot_rank(M(p, j)))) add_rows(j, p, one);
    T inv = inverse_of(M(j, j));
    for (int i = 0; i < n; ++i)
      if (i != j && !M(i, j).is_zero()) add_rows(i, j, -(M(i, j) * inv));
  }
  W word;
  for (auto& o : ops) word.push_back({o.i, o.j, -o.a});
  T c = one;
  for (int k = 0; k + 1 < n; ++k) {
    c = c * M(k, k);
    if (is_one_value(c)) continue;
    T ci = inverse_of(c);
    // diag(c, c^{-1}) on slots k, k+1 as a Whitehead word
    word.push_back({k, k + 1, c - one});
    word.push_back({k + 1, k, one});
    word.push_back({k, k + 1, ci - one});
    word.push_back({k + 1, k, -c});
  }
  W out;
  for (auto& t : word)
    if (!t.a.is_zero()) out.push_back(t);
  return out;
}

template <class T>
Matrix<T> recompose_impl(const std::vector<Transvection<T>>& w, const T& zero, const T& one, int n) {
  Matrix<T> M = Matrix<T>::identity(n, zero, one);
  for (auto& t : w) {
    // M <- M * e_ij(a): column j += a * column i
    for (int r = 0; r < n; ++r)
      if (!M(r, t.i).is_zero()) M(r, t.j) = M(r, t.j) + M(r, t.i) * t.a;
  }
  return M;
}

}  // namespace

std::vector<Transvection<Scalar>> elementary_factor(const SMatrix& M) {
  RingPtr R = M(0, 0).ring();
  if (!R->is_field()) throw DomainError("elementary factorization needs a field, got " + R->name);
  if (!det(M).is_one()) throw NotDetOne("determinant is not 1");
  return factor_impl(M, Scalar::one(R));
}

std::vector<Transvection<Laurent>> elementary_factor(const LMatrix& M) {
  RingPtr R = M(0, 0).ring();
  if (!R->is_field()) throw DomainError("elementary factorization needs a Laurent field, got " + R->name + "((t))");
  Laurent one = Laurent::constant(Scalar::one(R));
  if (!(M.det_expand() - one).is_zero()) throw NotDetOne("determinant is not 1");
  return factor_impl(M, one);
}

SMatrix recompose(const std::vector<Transvection<Scalar>>& w, RingPtr r, int n) {
  return recompose_impl(w, Scalar::zero(r), Scalar::one(r), n);
}

LMatrix recompose(const std::vector<Transvection<Laurent>>& w, RingPtr r, int n) {
  return recompose_impl(w, Laurent(r), Laurent::constant(Scalar::one(r)), n);
}

}  // namespace adelix
