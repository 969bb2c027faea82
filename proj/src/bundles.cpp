#include "adelix/bundles.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace adelix {

namespace {

int mat_lo(const LMatrix& m) {
  int v = kInfPrec;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) v = std::min(v, m(i, j).lo());
  return v;
}

int mat_hi(const LMatrix& m) {
  int v = -kInfPrec;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) v = std::max(v, m(i, j).hi());
  return v;
}

// Matrix of v -> (coefficients of v g at exponents [e0, e1)) for v ranging
// over R[t]^n of degree < kv, rows indexed (k, i), columns (e, j).
SMatrix truncated_map(const LMatrix& g, int kv, int e0, int e1) {
  RingPtr R = g(0, 0).ring();
  int n = g.rows();
  int cols = std::max(0, e1 - e0) * n;
  SMatrix m = zero_matrix(R, std::max(0, kv) * n, cols);
  for (int k = 0; k < kv; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Laurent& x = g(i, j);
        for (int c = 0; c < static_cast<int>(x.coeffs().size()); ++c) {
          int e = x.lo() + c + k;
          if (e < e0 || e >= e1) continue;
          m(k * n + i, (e - e0) * n + j) = x.coeffs()[c];
        }
      }
  return m;
}

int rank_of(const SMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rank(m);
}

CohomologyReport cohomology_at(const HorrocksBundle& B, int extra) {
  const LMatrix& g = B.g;
  int n = B.rank;
  int gh = mat_hi(g), gl = mat_lo(g), gil = mat_lo(B.ginv), gih = mat_hi(B.ginv);
  CohomologyReport rep;
  // H^0: v in R[t]^n with v g in R[1/t]^n forces deg v <= deg g^{-1}
  int D = std::max(0, gih) + extra;
  SMatrix phi0 = truncated_map(g, D + 1, 1, D + gh + 1);
  rep.h0.rank = phi0.rows() - rank_of(phi0);
  // H^1 = t R[t]^n / (positive parts of R[t]^n g); the image contains
  // t^K R[t]^n once t^K g^{-1} is integral
  int K = std::max(1, -gil) + extra;
  SMatrix phi1 = truncated_map(g, K - gl, 1, K);
  if (phi1.cols() == 0) {
    rep.h1.rank = 0;
  } else if (phi1.rows() == 0) {
    rep.h1.rank = phi1.cols();
  } else {
    SmithForm sf = smith_form(phi1);
    rep.h1.rank = phi1.cols() - sf.rank;
    for (auto& d : sf.invariants)
      if (!d.is_unit()) rep.h1.torsion.push_back(normalize_associate(d));
  }
  if (!rep.h1.torsion.empty()) {
    Scalar o = Scalar::one(B.base);
    for (auto& d : rep.h1.torsion) o = o * d;
    rep.torsion_order = o;
  }
  rep.euler = rep.h0.rank - rep.h1.rank;
  rep.window = std::max(D, K);
  (void)n;
  return rep;
}

bool same_report(const CohomologyReport& a, const CohomologyReport& b) {
  return a.h0.rank == b.h0.rank && a.h1.rank == b.h1.rank && a.h1.torsion == b.h1.torsion;
}

}  // namespace

HorrocksBundle HorrocksBundle::from_matrix(const LMatrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0) throw DomainError("transition matrix must be square and nonempty");
  RingPtr R = g(0, 0).ring();
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      if (!g(i, j).exact()) throw DomainError("transition matrix entries must be Laurent polynomials");
  Laurent d = g.det_expand();
  if (d.is_zero() || d.lo() != d.hi() || !d.coeff(d.lo()).is_unit())
    throw NotInvertible("det g = " + d.str() + " is not a unit of " + R->name + "[t, 1/t]");
  Laurent di = Laurent::monomial(d.coeff(d.lo()).inv(), -d.lo());
  LMatrix adj = g.adjugate(Laurent::constant(Scalar::one(R)));
  for (int i = 0; i < adj.rows(); ++i)
    for (int j = 0; j < adj.cols(); ++j) adj(i, j) = adj(i, j) * di;
  return HorrocksBundle{R, g.rows(), g, adj};
}

HorrocksBundle HorrocksBundle::line(RingPtr base, int d) {
  return from_matrix(laurent_diagonal({Laurent::t(base, -d)}));
}

std::string HorrocksBundle::str() const {
  return g.str([](const Laurent& x) { return x.str(); });
}

std::string ModuleReport::str() const {
  std::string s = std::to_string(rank);
  for (auto& d : torsion) s += " + torsion(" + d.str() + ")";
  return s;
}

CohomologyReport cech_cohomology(const HorrocksBundle& B, int window) {
  const int limit = 6;
  int extra = std::max(0, window);
  CohomologyReport cur = cohomology_at(B, extra);
  for (int attempt = 0; attempt < limit; ++attempt) {
    CohomologyReport wider = cohomology_at(B, 2 * extra + B.rank);
    if (same_report(cur, wider)) return cur;
    extra = 2 * extra + B.rank;
    cur = wider;
  }
  throw WindowUnstable("Cech cohomology did not stabilize after " + std::to_string(limit) + " doublings");
}

BirkhoffSplit birkhoff_split(const HorrocksBundle& B) {
  RingPtr k = B.base;
  if (!k->is_field()) throw DomainError("Birkhoff factorization needs a field base, got " + k->name);
  int n = B.rank;
  int s = std::max(0, -mat_lo(B.g));
  LMatrix R = B.g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = R(i, j).shift(s);
  LMatrix A = laurent_identity(k, n);
  auto row_deg = [&](int i) {
    int d = -kInfPrec;
    for (int j = 0; j < n; ++j)
      if (!R(i, j).is_zero()) d = std::max(d, R(i, j).hi());
    return d;
  };
  // Row reduction over k[t]: make the leading row coefficient matrix invertible.
  for (int guard = 0;; ++guard) {
    if (guard > 10000) throw DomainError("row reduction failed to terminate");
    std::vector<int> d(n);
    SMatrix lead = zero_matrix(k, n, n);
    for (int i = 0; i < n; ++i) {
      d[i] = row_deg(i);
      for (int j = 0; j < n; ++j) lead(i, j) = R(i, j).coeff(d[i]);
    }
    SMatrix ker = kernel(lead.transpose());
    if (ker.rows() == 0) break;
    std::vector<Scalar> alpha = ker.row(0);
    int kk = -1;
    for (int i = 0; i < n; ++i)
      if (!alpha[i].is_zero() && (kk < 0 || d[i] > d[kk])) kk = i;
    Scalar ak = alpha[kk].inv();
    for (int i = 0; i < n; ++i) {
      if (i == kk || alpha[i].is_zero()) continue;
      Laurent f = Laurent::monomial(alpha[i] * ak, d[kk] - d[i]);
      for (int j = 0; j < n; ++j) {
        R(kk, j) = R(kk, j) + f * R(i, j);
        A(j, i) = A(j, i) - f * A(j, kk);
      }
    }
  }
  std::vector<int> d(n), a(n);
  for (int i = 0; i < n; ++i) {
    d[i] = row_deg(i);
    a[i] = d[i] - s;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a[x] > a[y]; });
  BirkhoffSplit out{LMatrix(n, n, Laurent(k)), {}, LMatrix(n, n, Laurent(k))};
  for (int c = 0; c < n; ++c) {
    int src = order[c];
    out.type.push_back(a[src]);
    for (int r = 0; r < n; ++r) out.A(r, c) = A(r, src);
    for (int j = 0; j < n; ++j) out.C(c, j) = R(src, j).shift(-d[src]);
  }
  return out;
}

std::pair<int, int> split_cohomology(const std::vector<int>& type) {
  int h0 = 0, h1 = 0;
  for (int a : type) {
    h0 += std::max(1 - a, 0);
    h1 += std::max(a - 1, 0);
  }
  return {h0, h1};
}

int bhs_degree(const HorrocksBundle& B) {
  Laurent d = B.g.det_expand();
  return -d.lo();
}

HorrocksBundle direct_sum(const HorrocksBundle& a, const HorrocksBundle& b) {
  int n = a.rank + b.rank;
  LMatrix g(n, n, Laurent(a.base)), gi = g;
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < a.rank; ++j) {
      g(i, j) = a.g(i, j);
      gi(i, j) = a.ginv(i, j);
    }
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.rank; ++j) {
      g(a.rank + i, a.rank + j) = b.g(i, j);
      gi(a.rank + i, a.rank + j) = b.ginv(i, j);
    }
  return HorrocksBundle{a.base, n, g, gi};
}

SMatrix restrict_at_one(const HorrocksBundle& B) {
  Scalar one = Scalar::one(B.base);
  SMatrix g1 = B.g.map([&](const Laurent& x) { return x.is_zero() ? Scalar::zero(B.base) : x.eval(one); });
  Scalar d = det(g1);
  if (!d.is_unit()) throw NotInvertible("g(1) is not invertible over " + B.base->name);
  SMatrix adj = g1.adjugate(one);
  Scalar di = d.inv();
  return adj.map([&](const Scalar& x) { return x * di; });
}

std::string DetLine::str() const {
  std::string s = "[" + std::to_string(grading) + "] ";
  s += scalar ? scalar->str() : std::string("n/a");
  for (auto& d : torsion) s += " torsion(" + d.str() + ")";
  return s;
}

DetLine det_of_cohomology(const HorrocksBundle& B, int extra_depth) {
  CohomologyReport rep = cech_cohomology(B);
  DetLine out;
  out.grading = rep.euler;
  out.torsion = rep.h1.torsion;
  RingPtr k = B.base;
  if (!k->is_field()) return out;
  int n = B.rank;
  int N = std::max(1, -mat_lo(B.ginv)) + extra_depth;
  // echelon basis of L / t^N L0 for L = R[t]^n g
  QuotientBasis qb = quotient_basis(lattice_frame(B.ginv, B.g), N);
  int lo = N;
  for (auto& v : qb.vectors)
    for (auto& x : v)
      if (!x.is_zero()) lo = std::min(lo, x.lo());
  int width = N - lo;
  int d = qb.dim();
  SMatrix E = zero_matrix(k, d, width * n);
  for (int r = 0; r < d; ++r)
    for (int i = 0; i < n; ++i)
      for (int e = lo; e < N; ++e) E(r, (e - lo) * n + i) = qb.vectors[r][i].coeff(e);
  std::vector<int> posc;
  for (int e = std::max(1, lo); e < N; ++e)
    for (int i = 0; i < n; ++i) posc.push_back((e - lo) * n + i);
  int np = static_cast<int>(posc.size());
  SMatrix pos = zero_matrix(k, d, np);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < np; ++c) pos(r, c) = E(r, posc[c]);
  // coefficient rows (in the echelon basis) of an echelon basis of H^0
  SMatrix Z = zero_matrix(k, d, d);
  int zr = 0;
  std::vector<int> img_piv;
  if (np == 0) {
    Z = identity_matrix(k, d);
    zr = d;
  } else {
    SMatrix kx = kernel(pos.transpose());
    if (kx.rows() > 0) {
      SMatrix h = row_echelon(kx * E).rref;
      for (int r = 0; r < kx.rows(); ++r) {
        // E is in reduced echelon form, so coefficients are read off at its pivots
        for (int c = 0; c < d; ++c) {
          int pc = -1;
          for (int j = 0; j < E.cols(); ++j)
            if (!E(c, j).is_zero()) {
              pc = j;
              break;
            }
          Z(zr, c) = h(r, pc);
        }
        ++zr;
      }
    }
    // lifts of the echelon basis of the image in H^1(O(-N)^n)
    Echelon im = row_echelon(pos);
    img_piv = im.pivots;
    for (size_t j = 0; j < im.pivots.size(); ++j) {
      SMatrix aug = zero_matrix(k, np, d + 1);
      for (int c = 0; c < np; ++c) {
        for (int r = 0; r < d; ++r) aug(c, r) = pos(r, c);
        aug(c, d) = im.rref(static_cast<int>(j), c);
      }
      Echelon sol = row_echelon(aug);
      std::vector<Scalar> x(d, Scalar::zero(k));
      for (size_t q = 0; q < sol.pivots.size(); ++q) {
        if (sol.pivots[q] == d) throw DomainError("image row has no preimage");
        x[sol.pivots[q]] = sol.rref(static_cast<int>(q), d);
      }
      for (int c = 0; c < d; ++c) Z(zr, c) = x[c];
      ++zr;
    }
  }
  if (zr != d) throw DomainError("cohomology bases do not fill L / t^N L0");
  Scalar s = det(Z);
  // orientation of H^1(O(-N)^n): cokernel monomials first, then image pivots
  std::vector<int> seq;
  std::vector<bool> used(np, false);
  for (int p : img_piv) used[p] = true;
  for (int c = 0; c < np; ++c)
    if (!used[c]) seq.push_back(c);
  seq.insert(seq.end(), img_piv.begin(), img_piv.end());
  int inv = 0;
  for (size_t a = 0; a < seq.size(); ++a)
    for (size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] > seq[b]) ++inv;
  out.scalar = inv % 2 ? -s : s;
  return out;
}

}  // namespace adelix
