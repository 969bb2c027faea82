#pragma once

// Independent reference computations used to derive frozen expected values.
// These deliberately avoid the library's own arithmetic.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

inline long inverse_mod(long a, long n) {
  long r0 = n, r1 = ((a % n) + n) % n, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    long r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1, r1 = r2, s0 = s1, s1 = s2;
  }
  return ((s0 % n) + n) % n;
}

inline long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Brute-force search for the root of t^2 + b t + c mod p^m reducing to r0 mod p.
inline long hensel_root(long c, long b, long r0, long p, int m) {
  long N = ipow(p, m);
  for (long x = r0; x < N; x += p)
    if (((x * x + b * x + c) % N + N) % N == 0) return x;
  return -1;
}

// Polynomial-matrix data for the bundle oracle: entry (i, j) maps exponent
// to coefficient mod p.
using LaurentModP = std::map<int, long>;
using MatModP = std::vector<std::vector<LaurentModP>>;

// Row reduction mod p; returns the pivot column of each surviving row, in
// elimination order over the given column order.
inline std::vector<int> echelon_pivots(std::vector<std::vector<long>> m, const std::vector<int>& col_order, long p) {
  std::vector<int> piv;
  size_t r = 0;
  for (int c : col_order) {
    size_t k = r;
    while (k < m.size() && m[k][c] % p == 0) ++k;
    if (k == m.size()) continue;
    std::swap(m[k], m[r]);
    long inv = inverse_mod(m[r][c], p);
    for (auto& x : m[r]) x = ((x * inv) % p + p) % p;
    for (size_t q = 0; q < m.size(); ++q) {
      if (q == r || m[q][c] % p == 0) continue;
      long f = m[q][c];
      for (size_t j = 0; j < m[q].size(); ++j) m[q][j] = ((m[q][j] - f * m[r][j]) % p + p) % p;
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

struct CechDims {
  int h0 = 0, h1 = 0;
};

// Brute force over F_p with a fixed wide window W. H^0: polynomial rows v
// of degree <= W with v g free of positive exponents. H^1: positive
// exponents [1, W] modulo the positive parts of v g (deg v < 2W) that happen
// to vanish above W, found by eliminating high exponents first.
inline CechDims cech_dims(const MatModP& g, long p, int W) {
  int n = static_cast<int>(g.size());
  int gh = 0;
  for (auto& row : g)
    for (auto& e : row)
      for (auto& [k, c] : e)
        if (c % p) gh = std::max(gh, k);
  auto pos_parts = [&](int degs, int emax) {
    std::vector<std::vector<long>> rows;
    for (int k = 0; k < degs; ++k)
      for (int i = 0; i < n; ++i) {
        std::vector<long> r(static_cast<size_t>(emax) * n, 0);
        for (int j = 0; j < n; ++j)
          for (auto& [e, c] : g[i][j]) {
            int x = e + k;
            if (x >= 1 && x <= emax) r[static_cast<size_t>(x - 1) * n + j] = ((c % p) + p) % p;
          }
        rows.push_back(r);
      }
    return rows;
  };
  CechDims d;
  int e0 = W + gh;
  auto r0 = pos_parts(W + 1, e0);
  std::vector<int> cols0;
  for (int c = 0; c < e0 * n; ++c) cols0.push_back(c);
  d.h0 = static_cast<int>(r0.size()) - static_cast<int>(echelon_pivots(r0, cols0, p).size());
  int e1 = 2 * W + gh;
  auto r1 = pos_parts(2 * W, e1);
  std::vector<int> cols1;
  for (int c = e1 * n - 1; c >= 0; --c) cols1.push_back(c);
  int low = 0;
  for (int c : echelon_pivots(r1, cols1, p))
    if (c < W * n) ++low;
  d.h1 = W * n - low;
  return d;
}

// Rational functions as integer coefficient lists, lowest degree first.
struct RatPoly {
  std::vector<long> num, den;
};

// f = (t - a)^v u with u(a) != 0; returns v and u(a).
inline int order_at(const std::vector<long>& c0, const mpq_class& a, mpq_class& value) {
  std::vector<mpq_class> c(c0.begin(), c0.end());
  while (!c.empty() && c.back() == 0) c.pop_back();
  int v = 0;
  while (true) {
    // synthetic division by (t - a)
    std::vector<mpq_class> q(c.size() > 1 ? c.size() - 1 : 0);
    mpq_class acc = 0;
    for (size_t i = c.size(); i-- > 0;) {
      acc = acc * a + c[i];
      if (i > 0) q[i - 1] = acc;
    }
    if (acc != 0) {
      value = acc;
      return v;
    }
    c = q;
    ++v;
  }
}

inline mpq_class qpow(const mpq_class& x, long e) {
  mpq_class r = 1;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= x;
  return e < 0 ? mpq_class(1 / r) : r;
}

// (-1)^{v(f)v(g)} f^{v(g)} / g^{v(f)} at t = a, in Q.
inline mpq_class tame_at(const RatPoly& f, const RatPoly& g, long a) {
  mpq_class fn, fd, gn, gd;
  int vf = order_at(f.num, a, fn) - order_at(f.den, a, fd);
  int vg = order_at(g.num, a, gn) - order_at(g.den, a, gd);
  mpq_class r = qpow(fn / fd, vg) / qpow(gn / gd, vf);
  if ((vf * vg) % 2 != 0) r = -r;
  return r;
}

inline long mod_p(long x, long p) { return ((x % p) + p) % p; }

inline int order_at_fp(std::vector<long> c, long a, long p, long& value) {
  for (auto& x : c) x = mod_p(x, p);
  while (!c.empty() && c.back() == 0) c.pop_back();
  int v = 0;
  while (true) {
    std::vector<long> q(c.size() > 1 ? c.size() - 1 : 0);
    long acc = 0;
    for (size_t i = c.size(); i-- > 0;) {
      acc = mod_p(acc * a + c[i], p);
      if (i > 0) q[i - 1] = acc;
    }
    if (acc != 0) {
      value = acc;
      return v;
    }
    c = q;
    ++v;
  }
}

inline long pow_mod(long b, long e, long p) {
  b = mod_p(b, p);
  if (e < 0) {
    b = inverse_mod(b, p);
    e = -e;
  }
  long r = 1;
  while (e-- > 0) r = r * b % p;
  return r;
}

// Tame symbol of f, g in F_p(t) at t = a (a in F_p), or at infinity when
// at_infinity is set.
inline long tame_at_fp(const RatPoly& f, const RatPoly& g, long a, long p, bool at_infinity = false) {
  long fn, fd, gn, gd;
  int vf, vg;
  if (at_infinity) {
    auto lead = [&](std::vector<long> c, long& lc) {
      for (auto& x : c) x = mod_p(x, p);
      while (!c.empty() && c.back() == 0) c.pop_back();
      lc = c.back();
      return -static_cast<int>(c.size() - 1);
    };
    vf = lead(f.num, fn) - lead(f.den, fd);
    vg = lead(g.num, gn) - lead(g.den, gd);
  } else {
    vf = order_at_fp(f.num, a, p, fn) - order_at_fp(f.den, a, p, fd);
    vg = order_at_fp(g.num, a, p, gn) - order_at_fp(g.den, a, p, gd);
  }
  long uf = fn * inverse_mod(fd, p) % p, ug = gn * inverse_mod(gd, p) % p;
  long r = pow_mod(uf, vg, p) * pow_mod(ug, -vf, p) % p;
  if ((vf * vg) % 2 != 0) r = mod_p(-r, p);
  return r;
}


// Ramanujan sum c_d(k): the sum of zeta_d^{jk} over j prime to d, which is
// the rational character of C_n attached to the divisor d.
inline long ramanujan_sum(long d, long k) {
  auto mobius = [](long n) {
    int s = 1;
    for (long q = 2; q * q <= n; ++q)
      if (n % q == 0) {
        n /= q;
        if (n % q == 0) return 0;
        s = -s;
      }
    return n > 1 ? -s : s;
  };
  long g = std::gcd(d, k < 0 ? -k : k);
  long s = 0;
  for (long e = 1; e <= g; ++e)
    if (g % e == 0) s += mobius(d / e) * e;
  return s;
}

// Determinant over Q by fraction-exact elimination.
inline mpq_class det_q(std::vector<std::vector<mpq_class>> a) {
  const size_t n = a.size();
  mpq_class d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) std::swap(a[p], a[c]), d = -d;
    d *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      mpq_class f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

// Permutations of {0,1,2} in lexicographic order with their signs.
inline std::vector<std::vector<int>> s3_perms() {
  std::vector<std::vector<int>> out;
  std::vector<int> p{0, 1, 2};
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}
inline int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

// For a k x k matrix x over Q[S3] (x[r][s][g], g in s3_perms order), the
// determinants in the trivial, sign and two-dimensional representations.
// The last one is det(permutation representation) / det(trivial), since the
// permutation representation is trivial + standard.
inline std::vector<mpq_class> s3_dets(const std::vector<std::vector<std::vector<mpq_class>>>& x) {
  const auto perms = s3_perms();
  const size_t k = x.size();
  std::vector<std::vector<mpq_class>> triv(k, std::vector<mpq_class>(k)), sgn = triv;
  std::vector<std::vector<mpq_class>> perm(3 * k, std::vector<mpq_class>(3 * k));
  for (size_t r = 0; r < k; ++r)
    for (size_t s = 0; s < k; ++s)
      for (size_t g = 0; g < perms.size(); ++g) {
        const mpq_class& c = x[r][s][g];
        triv[r][s] += c;
        sgn[r][s] += c * perm_sign(perms[g]);
        for (int i = 0; i < 3; ++i) perm[3 * r + perms[g][i]][3 * s + i] += c;
      }
  mpq_class dt = det_q(triv);
  // a singular trivial block leaves the standard one undetermined; report 0
  return {dt, det_q(sgn), dt == 0 ? mpq_class(0) : det_q(perm) / dt};
}
}  // namespace oracle
