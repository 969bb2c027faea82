#include "adelix/groupalg.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <sstream>

#include "adelix/loopext.hpp"

namespace adelix {

namespace {

RingPtr QQ() { return ring_rationals(); }

using QVec = std::vector<Rat>;

bool is_zero_vec(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

// Incremental echelon basis of a subspace of Q^n, remembering how each
// stored row is a combination of the vectors inserted so far.
class Span {
 public:
  explicit Span(int n) : n_(n) {}
  int dim() const { return static_cast<int>(rows_.size()); }

  // Coordinates of v in terms of the inserted vectors, if v is in the span.
  std::optional<QVec> coords(const QVec& v) const {
    QVec r = v;
    QVec c(inserted_, 0);
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rat f = r[piv_[i]];
      if (f == 0) continue;
      for (int j = 0; j < n_; ++j) r[j] -= f * rows_[i][j];
      for (int j = 0; j < inserted_; ++j) c[j] += f * comb_[i][j];
    }
    if (!is_zero_vec(r)) return std::nullopt;
    return c;
  }

  // Inserts v; returns false when v was already in the span.
  bool insert(const QVec& v) {
    QVec r = v;
    QVec comb(inserted_ + 1, 0);
    comb[inserted_] = 1;
    for (auto& c : comb_) c.push_back(0);
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rat f = r[piv_[i]];
      if (f == 0) continue;
      for (int j = 0; j < n_; ++j) r[j] -= f * rows_[i][j];
      for (int j = 0; j <= inserted_; ++j) comb[j] -= f * comb_[i][j];
    }
    ++inserted_;
    int p = 0;
    while (p < n_ && r[p] == 0) ++p;
    if (p == n_) {
      for (auto& c : comb_) c.pop_back();
      --inserted_;
      return false;
    }
    const Rat lead = r[p];
    for (auto& x : r) x /= lead;
    for (auto& x : comb) x /= lead;
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rat f = rows_[i][p];
      if (f == 0) continue;
      for (int j = 0; j < n_; ++j) rows_[i][j] -= f * r[j];
      for (int j = 0; j < inserted_; ++j) comb_[i][j] -= f * comb[j];
    }
    rows_.push_back(r);
    comb_.push_back(comb);
    piv_.push_back(p);
    return true;
  }

 private:
  int n_;
  int inserted_ = 0;
  std::vector<QVec> rows_, comb_;
  std::vector<int> piv_;
};

Poly qpoly(const std::vector<Rat>& c) {
  std::vector<Scalar> s;
  for (const auto& x : c) s.push_back(Scalar::from_rat(QQ(), x));
  return Poly(QQ(), s);
}

// Monic minimal polynomial of c in an algebra with unit `one`, both given as
// vectors, using the supplied product.
template <class Mul>
Poly min_poly(const QVec& one, const QVec& c, Mul mul, int max_deg) {
  Span span(static_cast<int>(one.size()));
  std::vector<QVec> powers{one};
  span.insert(one);
  for (int k = 1; k <= max_deg + 1; ++k) {
    QVec next = mul(powers.back(), c);
    if (auto co = span.coords(next)) {
      std::vector<Rat> coeff(k + 1, 0);
      for (int j = 0; j < k; ++j) coeff[j] = -(*co)[j];
      coeff[k] = 1;
      return qpoly(coeff);
    }
    span.insert(next);
    powers.push_back(next);
  }
  throw DomainError("minimal polynomial exceeds the algebra dimension");
}

// Monic irreducible factors over Q with multiplicities.
std::vector<Factor> factor_q(const Poly& f) {
  Int den = 1;
  for (const auto& c : f.coeffs()) {
    Int d = c.rat().get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Int> zc;
  for (const auto& c : f.coeffs()) {
    Rat q = c.rat() * den;
    zc.push_back(q.get_num());
  }
  std::vector<Factor> out;
  for (const auto& fa : factor_z(Poly::from_bigints(ring_integers(), zc))) {
    std::vector<Rat> qc;
    for (const auto& c : fa.f.coeffs()) qc.push_back(Rat(c.integer()));
    out.push_back({qpoly(qc).monic(), fa.mult});
  }
  return out;
}

// Evaluate a polynomial at an element of an algebra.
template <class Mul>
QVec eval_at(const Poly& P, const QVec& one, const QVec& c, Mul mul) {
  QVec acc(one.size(), 0);
  for (int k = P.degree(); k >= 0; --k) {
    acc = mul(acc, c);
    const Rat a = P.coeff(k).rat();
    for (size_t j = 0; j < acc.size(); ++j) acc[j] += a * one[j];
  }
  return acc;
}

// CRT idempotent: E = 1 mod A, E = 0 mod B, for coprime A, B.
Poly crt_idempotent(const Poly& A, const Poly& B) {
  Poly g, s, t;
  poly_xgcd(B, A, g, s, t);  // g = s B + t A = 1
  return (s * B) % (A * B);
}

Poly zmod(const Poly& a, const Poly& mu) { return a.is_zero() ? a : a % mu; }

Poly zinv(const Poly& a, const Poly& mu) {
  if (a.is_zero()) throw NotInvertible("zero in a center field");
  Poly g, s, t;
  poly_xgcd(a, mu, g, s, t);
  if (g.degree() != 0) throw NotInvertible("element shares a factor with the center polynomial");
  return zmod(s * Poly::constant(g.lead().inv()), mu);
}

using ZMat = std::vector<std::vector<Poly>>;

// Determinant over Q[y]/(mu) by elimination.
Poly zdet(ZMat a, const Poly& mu) {
  const int n = static_cast<int>(a.size());
  Poly d = Poly::constant(Scalar::one(QQ()));
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return Poly(QQ());
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d = zmod(d * a[c][c], mu);
    Poly inv = zinv(a[c][c], mu);
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      Poly f = zmod(a[r][c] * inv, mu);
      for (int k = c; k < n; ++k) a[r][k] = zmod(a[r][k] - f * a[c][k], mu);
    }
  }
  return d;
}

ZMat zmul(const ZMat& a, const ZMat& b, const Poly& mu) {
  const size_t n = a.size();
  ZMat c(n, std::vector<Poly>(n, Poly(QQ())));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) c[i][j] = zmod(c[i][j] + a[i][k] * b[k][j], mu);
    }
  return c;
}

std::string zstr(const Poly& a) { return a.is_zero() ? "0" : a.str("y"); }

int isqrt_exact(int n) {
  int r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

Laurent scale(const Laurent& x, const Rat& q) { return x * Scalar::from_rat(x.ring(), q); }

}  // namespace

// ---------------------------------------------------------------------------
// Groups

int FiniteGroup::inverse(int a) const {
  for (int b = 0; b < order(); ++b)
    if (table[a][b] == identity) return b;
  throw DomainError("element without inverse");
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < a; ++b)
      if (table[a][b] != table[b][a]) return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<int> seen(order(), 0);
  std::vector<std::vector<int>> out;
  for (int a = 0; a < order(); ++a) {
    if (seen[a]) continue;
    std::vector<int> cls;
    for (int g = 0; g < order(); ++g) {
      int c = mul(mul(g, a), inverse(g));
      if (!seen[c]) {
        seen[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.push_back(cls);
  }
  return out;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw DomainError("empty multiplication table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw DomainError("multiplication table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw DomainError("multiplication table entry out of range");
  }
  FiniteGroup G{std::move(name), std::move(table), -1};
  for (int e = 0; e < n && G.identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = G.table[e][a] == a && G.table[a][e] == a;
    if (ok) G.identity = e;
  }
  if (G.identity < 0) throw DomainError("multiplication table has no identity");
  for (int a = 0; a < n; ++a) {
    std::vector<int> row(G.table[a]);
    std::sort(row.begin(), row.end());
    for (int i = 0; i < n; ++i)
      if (row[i] != i) throw DomainError("multiplication table is not a Latin square");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c))) throw DomainError("multiplication is not associative");
  return G;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw DomainError("cyclic group of order < 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(t, "C" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw DomainError("dihedral group with n < 1");
  // r^i s^j -> i + n j, with s r = r^{-1} s.
  const int N = 2 * n;
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      int i1 = a % n, j1 = a / n, i2 = b % n, j2 = b / n;
      int i = ((j1 ? i1 - i2 : i1 + i2) % n + n) % n;
      t[a][b] = i + n * ((j1 + j2) % 2);
    }
  return from_table(t, "D" + std::to_string(n));
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return from_table(t, "S3");
}

FiniteGroup FiniteGroup::quaternion8() {
  // Elements s * u with s = +-1 and u in {1, i, j, k}: index u + 4 (s < 0).
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a % 4, ub = b % 4;
      int s = (a < 4 ? 1 : -1) * (b < 4 ? 1 : -1) * sign[ua][ub];
      t[a][b] = unit[ua][ub] + (s < 0 ? 4 : 0);
    }
  return from_table(t, "Q8");
}

FiniteGroup FiniteGroup::builtin(const std::string& name) {
  std::string s;
  for (char c : name)
    if (c != '_' && !std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::toupper(c));
  if (s == "S3") return symmetric3();
  if (s == "Q8") return quaternion8();
  auto number = [&](size_t from) {
    if (s.size() <= from || !std::all_of(s.begin() + from, s.end(), ::isdigit))
      throw ParseError("unknown group '" + name + "'");
    return std::stoi(s.substr(from));
  };
  if (s[0] == 'C') return cyclic(number(1));
  if (s[0] == 'D') return dihedral(number(1));
  throw ParseError("unknown group '" + name + "'");
}

GroupRingElem group_ring_mul(const FiniteGroup& G, const GroupRingElem& x, const GroupRingElem& y) {
  GroupRingElem z(G.order(), 0);
  for (int a = 0; a < G.order(); ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b < G.order(); ++b)
      if (y[b] != 0) z[G.mul(a, b)] += x[a] * y[b];
  }
  return z;
}

// ---------------------------------------------------------------------------
// Wedderburn decomposition

std::string WedderburnComponent::str() const {
  std::string Z = center_degree() == 1 ? "Q" : "Q[y]/(" + mu.str("y") + ")";
  return m == 1 ? Z : "M_" + std::to_string(m) + "(" + Z + ")";
}

std::vector<int> SplitGroupAlgebra::dimensions() const {
  std::vector<int> d;
  for (const auto& c : components) d.push_back(c.dimension());
  return d;
}

std::string SplitGroupAlgebra::str() const {
  std::string s = "Q[" + group.name + "] = ";
  for (size_t i = 0; i < components.size(); ++i) s += (i ? " x " : "") + components[i].str();
  return s;
}

namespace {

GroupRingElem basis_elem(const FiniteGroup& G, int g) {
  GroupRingElem e(G.order(), 0);
  e[g] = 1;
  return e;
}

// Rank-one idempotent inside the simple component with central idempotent e
// and center Q, found by splitting corners with reducible minimal polynomials.
GroupRingElem rank_one_idempotent(const FiniteGroup& G, const GroupRingElem& e, int m) {
  auto mul = [&](const QVec& a, const QVec& b) { return group_ring_mul(G, a, b); };
  const int n = G.order();
  auto left_dim = [&](const GroupRingElem& f) {
    Span s(n);
    for (int g = 0; g < n; ++g) s.insert(mul(basis_elem(G, g), f));
    return s.dim();
  };
  GroupRingElem f = e;
  int r = m;  // rank of f in M_m(Q)
  while (r > 1) {
    std::vector<GroupRingElem> cands;
    for (int g = 0; g < n; ++g) cands.push_back(basis_elem(G, g));
    for (int g = 0; g < n; ++g)
      for (int h = g + 1; h < n; ++h) {
        GroupRingElem c = basis_elem(G, g);
        c[h] += 1;
        cands.push_back(c);
      }
    bool split = false;
    for (const auto& x : cands) {
      GroupRingElem c = mul(mul(f, x), f);
      Poly mp = min_poly(f, c, mul, r);
      auto fac = factor_q(mp);
      if (fac.size() < 2) continue;
      Poly A = fac[0].f.pow(fac[0].mult);
      Poly B = mp / A;
      GroupRingElem u = eval_at(crt_idempotent(A, B), f, c, mul);
      GroupRingElem w = f;
      for (int j = 0; j < n; ++j) w[j] -= u[j];
      int ru = left_dim(u) / m, rw = left_dim(w) / m;
      if (ru < rw) {
        f = u;
        r = ru;
      } else {
        f = w;
        r = rw;
      }
      split = true;
      break;
    }
    if (!split)
      throw DoesNotSplit("a component of dimension " + std::to_string(m * m) +
                         " over Q has no rational zero divisor; its Schur index exceeds 1");
  }
  return f;
}

void verify(const SplitGroupAlgebra& A) {
  const FiniteGroup& G = A.group;
  int total = 0;
  for (const auto& c : A.components) {
    total += c.dimension();
    for (int a = 0; a < G.order(); ++a)
      for (int b = 0; b < G.order(); ++b)
        if (zmul(c.rho[a], c.rho[b], c.mu) != c.rho[G.mul(a, b)])
          throw DomainError("component " + c.str() + " is not a homomorphism");
  }
  if (total != G.order()) throw DomainError("component dimensions do not add up to |G|");
  // Injectivity of the combined map: its images of the group basis are
  // linearly independent over Q.
  Span s(total);
  for (int g = 0; g < G.order(); ++g) {
    QVec v;
    for (const auto& c : A.components)
      for (const auto& row : c.rho[g])
        for (const auto& z : row)
          for (int k = 0; k < c.center_degree(); ++k) v.push_back(z.coeff(k).rat());
    if (!s.insert(v)) throw DomainError("combined projection is not injective");
  }
}

}  // namespace

SplitGroupAlgebra wedderburn(const FiniteGroup& G) {
  const int n = G.order();
  auto mul = [&](const QVec& a, const QVec& b) { return group_ring_mul(G, a, b); };
  const GroupRingElem one = basis_elem(G, G.identity);
  const auto classes = G.conjugacy_classes();
  const int c = static_cast<int>(classes.size());
  std::vector<GroupRingElem> sums;
  for (const auto& cls : classes) {
    GroupRingElem s(n, 0);
    for (int g : cls) s[g] = 1;
    sums.push_back(s);
  }
  // Primitive element of the center: a combination of class sums whose
  // minimal polynomial has degree c.
  GroupRingElem a;
  Poly mu;
  for (int attempt = 0; attempt < 64 && mu.degree() < c; ++attempt) {
    a.assign(n, 0);
    for (int j = 0; j < c; ++j) {
      long w = 1 + (static_cast<long>(j) * (attempt + 2) + attempt * attempt) % (3 * c + 5 + attempt);
      for (int g : classes[j]) a[g] += w;
    }
    mu = min_poly(one, a, mul, c);
  }
  if (mu.degree() < c) throw DomainError("no primitive element found for the center");

  SplitGroupAlgebra A{G, {}};
  for (const auto& fa : factor_q(mu)) {
    if (fa.mult != 1) throw DomainError("center is not reduced");
    WedderburnComponent W;
    W.mu = fa.f;
    W.idempotent = eval_at(crt_idempotent(fa.f, mu / fa.f), one, a, mul);
    const GroupRingElem& e = W.idempotent;
    Span comp(n);
    for (int g = 0; g < n; ++g) comp.insert(mul(basis_elem(G, g), e));
    const int d = W.mu.degree();
    if (comp.dim() % d != 0 || isqrt_exact(comp.dim() / d) < 0)
      throw DomainError("component dimension is not m^2 [Z:Q]");
    W.m = isqrt_exact(comp.dim() / d);
    if (W.m == 1) {
      // Z = span{y^k e} for a generator y: the image of a group element when
      // one generates (then mu is cyclotomic), otherwise a.
      GroupRingElem ae = mul(a, e);
      for (int g = 0; g < n; ++g) {
        GroupRingElem ge = mul(basis_elem(G, g), e);
        Poly mg = min_poly(e, ge, mul, d);
        if (mg.degree() == d) {
          ae = ge;
          W.mu = mg;
          break;
        }
      }
      Span zb(n);
      GroupRingElem ak = e;
      for (int k = 0; k < d; ++k, ak = mul(ak, ae)) zb.insert(ak);
      for (int g = 0; g < n; ++g) {
        auto co = zb.coords(mul(basis_elem(G, g), e));
        if (!co) throw DomainError("group element outside its commutative component");
        W.rho.push_back({{qpoly(*co)}});
      }
    } else {
      if (d != 1)
        throw DomainError("matrix component over a center of degree " + std::to_string(d) + " is not supported");
      GroupRingElem f = rank_one_idempotent(G, e, W.m);
      // V = Q[G] f with a basis among the g f.
      Span vs(n);
      std::vector<GroupRingElem> basis;
      for (int g = 0; g < n; ++g) {
        GroupRingElem v = mul(basis_elem(G, g), f);
        if (vs.insert(v)) basis.push_back(v);
      }
      if (static_cast<int>(basis.size()) != W.m) throw DomainError("minimal left ideal has the wrong dimension");
      for (int g = 0; g < n; ++g) {
        ZMat M(W.m, std::vector<Poly>(W.m, Poly(QQ())));
        for (int j = 0; j < W.m; ++j) {
          auto co = vs.coords(mul(basis_elem(G, g), basis[j]));
          for (int k = 0; k < W.m; ++k) M[k][j] = qpoly({(*co)[k]});
        }
        W.rho.push_back(M);
      }
    }
    A.components.push_back(std::move(W));
  }
  // Order: by dimension, then trivial-like components first (largest trace sum).
  auto trace_sum = [&](const WedderburnComponent& W) {
    Rat s = 0;
    for (const auto& M : W.rho)
      for (int i = 0; i < W.m; ++i) s += M[i][i].coeff(0).rat();
    return s;
  };
  std::stable_sort(A.components.begin(), A.components.end(), [&](const auto& x, const auto& y) {
    if (x.dimension() != y.dimension()) return x.dimension() < y.dimension();
    return trace_sum(x) > trace_sum(y);
  });
  verify(A);
  return A;
}

std::vector<std::vector<Poly>> project(const SplitGroupAlgebra& A, int i, const GroupRingElem& x) {
  const auto& W = A.components.at(i);
  ZMat M(W.m, std::vector<Poly>(W.m, Poly(QQ())));
  for (int g = 0; g < A.group.order(); ++g) {
    if (x[g] == 0) continue;
    Poly s = Poly::constant(Scalar::from_rat(QQ(), x[g]));
    for (int r = 0; r < W.m; ++r)
      for (int k = 0; k < W.m; ++k) M[r][k] = zmod(M[r][k] + s * W.rho[g][r][k], W.mu);
  }
  return M;
}

// ---------------------------------------------------------------------------
// Determinants

bool DetVector::operator==(const DetVector& b) const { return values == b.values; }

std::string DetVector::str() const {
  std::string s = "(";
  for (size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + zstr(values[i]);
  return s + ")";
}

GroupMatrix group_matrix_mul(const FiniteGroup& G, const GroupMatrix& x, const GroupMatrix& y) {
  const size_t k = x.size();
  GroupMatrix z(k, std::vector<GroupRingElem>(k, GroupRingElem(G.order(), 0)));
  for (size_t i = 0; i < k; ++i)
    for (size_t l = 0; l < k; ++l)
      for (size_t j = 0; j < k; ++j) {
        auto p = group_ring_mul(G, x[i][l], y[l][j]);
        for (int g = 0; g < G.order(); ++g) z[i][j][g] += p[g];
      }
  return z;
}

DetVector det_map(const GroupMatrix& x, const SplitGroupAlgebra& A) {
  const int k = static_cast<int>(x.size());
  for (const auto& row : x)
    if (static_cast<int>(row.size()) != k) throw DomainError("det_map needs a square matrix");
  DetVector out;
  for (size_t i = 0; i < A.components.size(); ++i) {
    const auto& W = A.components[i];
    ZMat big(k * W.m, std::vector<Poly>(k * W.m, Poly(QQ())));
    for (int r = 0; r < k; ++r)
      for (int s = 0; s < k; ++s) {
        auto blk = project(A, static_cast<int>(i), x[r][s]);
        for (int a = 0; a < W.m; ++a)
          for (int b = 0; b < W.m; ++b) big[r * W.m + a][s * W.m + b] = blk[a][b];
      }
    Poly d = zdet(big, W.mu);
    if (d.is_zero()) throw NotInvertible("matrix is singular in component " + W.str());
    out.values.push_back(d);
  }
  return out;
}

LMatrix project(const SplitGroupAlgebra& A, int i, const LaurentGroupMatrix& x) {
  const auto& W = A.components.at(i);
  if (W.center_degree() != 1)
    throw DomainError("series coefficients need components with center Q, not " + W.str());
  const int k = static_cast<int>(x.size());
  if (k == 0 || x[0].empty() || x[0][0].empty()) throw DomainError("empty group matrix");
  RingPtr F = x[0][0][0].ring();
  Laurent zero(F);
  LMatrix big(k * W.m, k * W.m, zero);
  for (int r = 0; r < k; ++r) {
    if (static_cast<int>(x[r].size()) != k) throw DomainError("group matrix is not square");
    for (int s = 0; s < k; ++s)
      for (int g = 0; g < A.group.order(); ++g) {
        const Laurent& c = x[r][s].at(g);
        if (c.is_zero()) continue;
        for (int a = 0; a < W.m; ++a)
          for (int b = 0; b < W.m; ++b) {
            Rat q = W.rho[g][a][b].is_zero() ? Rat(0) : W.rho[g][a][b].coeff(0).rat();
            if (q != 0) big(r * W.m + a, s * W.m + b) += scale(c, q);
          }
      }
  }
  return big;
}

std::vector<Laurent> det_map(const LaurentGroupMatrix& x, const SplitGroupAlgebra& A) {
  std::vector<Laurent> out;
  for (size_t i = 0; i < A.components.size(); ++i) {
    Laurent d = project(A, static_cast<int>(i), x).det_expand();
    if (d.is_zero()) throw NotInvertible("matrix is singular in component " + A.components[i].str());
    out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symbols

namespace {

std::optional<Laurent> scalar_matrix(const LMatrix& M) {
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) {
      if (i != j && !M(i, j).is_zero()) return std::nullopt;
      if (i == j && (M(i, i) - M(0, 0)).is_zero() == false) return std::nullopt;
    }
  return M(0, 0);
}

template <class Eval>
std::vector<Scalar> morita(const GroupWord& w, const SplitGroupAlgebra& A, Eval eval) {
  if (w.pairs.empty()) throw DomainError("empty symbol word");
  std::vector<Scalar> out;
  for (size_t i = 0; i < A.components.size(); ++i) {
    const auto& W = A.components[i];
    std::optional<Scalar> acc;
    for (const auto& pr : w.pairs) {
      LMatrix a = project(A, static_cast<int>(i), LaurentGroupMatrix{{pr.a}});
      LMatrix b = project(A, static_cast<int>(i), LaurentGroupMatrix{{pr.b}});
      Laurent da = a.det_expand(), db = b.det_expand();
      if (da.is_zero() || db.is_zero()) throw NotInvertible("symbol entry is not a unit in component " + W.str());
      Laurent x, y;
      if (W.m == 1) {
        x = da;
        y = db;
      } else if (auto c = scalar_matrix(a)) {
        x = *c;
        y = db;
      } else if (auto c2 = scalar_matrix(b)) {
        x = da;
        y = *c2;
      } else {
        throw DomainError("neither entry is central in component " + W.str());
      }
      Scalar v = eval(x, y).pow(pr.e);
      acc = acc ? *acc * v : v;
    }
    out.push_back(*acc);
  }
  return out;
}

}  // namespace

std::vector<Scalar> morita_tame(const GroupWord& w, const SplitGroupAlgebra& A) {
  return morita(w, A, [](const Laurent& a, const Laurent& b) { return tame_pair(a, b); });
}

std::vector<Scalar> morita_kato(const GroupWord& w, const SplitGroupAlgebra& A, int n) {
  return morita(w, A, [n](const Laurent& a, const Laurent& b) {
    return kato_pair(TwoDim::from_laurent(a.ring(), a), TwoDim::from_laurent(b.ring(), b), n);
  });
}

std::vector<Codim1Idele> equivariant_c1(const SplitGroupAlgebra& A, const LaurentGroupMatrix& lambda,
                                        const std::vector<BasisChoice>& bases) {
  std::vector<Codim1Idele> out;
  for (size_t i = 0; i < A.components.size(); ++i) {
    LMatrix l = project(A, static_cast<int>(i), lambda);
    auto B = HorrocksBundle::from_matrix(laurent_inverse(l));
    out.push_back(c1_idele(B, i < bases.size() ? bases[i] : BasisChoice{}));
  }
  return out;
}

}  // namespace adelix
