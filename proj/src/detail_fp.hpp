#pragma once

// Dense polynomial helpers on coefficient vectors (lowest degree first)
// shared by the scalar and polynomial layers.

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace adelix::detail {

using IVec = std::vector<mpz_class>;

inline mpz_class modn(const mpz_class& a, const mpz_class& n) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline void trim(IVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f for monic f, coefficients reduced mod N; result has size deg f.
inline IVec poly_rem_monic(IVec a, const IVec& f, const mpz_class& N) {
  int k = static_cast<int>(f.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= k; --i) {
    mpz_class c = modn(a[i], N);
    if (c == 0) continue;
    for (int j = 0; j < k; ++j) a[i - k + j] -= c * f[j];
    a[i] = 0;
  }
  a.resize(k);
  for (auto& x : a) x = modn(x, N);
  return a;
}

inline IVec mulmod(const IVec& a, const IVec& b, const IVec& f, const mpz_class& N) {
  IVec c(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return poly_rem_monic(std::move(c), f, N);
}

inline IVec fp_mul(const IVec& a, const IVec& b, const mpz_class& p) {
  if (a.empty() || b.empty()) return {};
  IVec c(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  for (auto& x : c) x = modn(x, p);
  trim(c);
  return c;
}

inline IVec fp_sub(const IVec& a, const IVec& b, const mpz_class& p) {
  IVec c(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = modn((i < a.size() ? a[i] : mpz_class(0)) - (i < b.size() ? b[i] : mpz_class(0)), p);
  trim(c);
  return c;
}

// Division by b whose leading coefficient is a unit mod p.
inline std::pair<IVec, IVec> fp_divmod(IVec a, IVec b, const mpz_class& p) {
  for (auto& x : a) x = modn(x, p);
  for (auto& x : b) x = modn(x, p);
  trim(a);
  trim(b);
  if (b.empty()) return {{}, a};
  if (a.size() < b.size()) return {{}, a};
  mpz_class li;
  mpz_invert(li.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
  IVec q(a.size() - b.size() + 1, mpz_class(0));
  for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    mpz_class c = modn(a[i] * li, p);
    if (c == 0) continue;
    int sh = i - static_cast<int>(b.size()) + 1;
    q[sh] = c;
    for (size_t j = 0; j < b.size(); ++j) a[sh + j] = modn(a[sh + j] - c * b[j], p);
  }
  trim(q);
  trim(a);
  return {q, a};
}

inline IVec fp_monic(IVec a, const mpz_class& p) {
  trim(a);
  if (a.empty()) return a;
  mpz_class li;
  mpz_invert(li.get_mpz_t(), a.back().get_mpz_t(), p.get_mpz_t());
  for (auto& x : a) x = modn(x * li, p);
  return a;
}

inline IVec fp_gcd(IVec a, IVec b, const mpz_class& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    IVec r = fp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

// base^e mod f over F_p.
inline IVec fp_powmod(IVec base, mpz_class e, const IVec& f, const mpz_class& p) {
  IVec result{mpz_class(1)};
  base = fp_divmod(base, f, p).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = fp_divmod(fp_mul(result, base, p), f, p).second;
    e >>= 1;
    if (e > 0) base = fp_divmod(fp_mul(base, base, p), f, p).second;
  }
  return result;
}

// Rabin's test for monic f over F_p.
inline bool fp_is_irreducible(const IVec& f0, const mpz_class& p) {
  IVec f = fp_monic(f0, p);
  int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  IVec x{mpz_class(0), mpz_class(1)};
  auto frob_iter = [&](int times) {
    IVec y = x;
    for (int i = 0; i < times; ++i) y = fp_powmod(y, p, f, p);
    return y;
  };
  if (fp_sub(frob_iter(n), x, p).size() != 0) return false;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool maximal = true;
    for (int e = d + 1; e < n; ++e)
      if (n % e == 0 && e % d == 0) maximal = false;
    if (!maximal) continue;
    IVec g = fp_gcd(f, fp_sub(frob_iter(d), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

// Inverse of a unit a in (Z/p^m)[x]/(f): extended Euclid mod p, then Newton.
inline IVec galois_inverse(const IVec& a, const IVec& f, const mpz_class& p, int m) {
  int k = static_cast<int>(f.size()) - 1;
  mpz_class pm;
  mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(m));
  if (k == 1) {
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a[0].get_mpz_t(), pm.get_mpz_t());
    return {r};
  }
  // extended Euclid on (f, a) over F_p
  IVec r0 = fp_monic(f, p), r1 = a;
  for (auto& x : r1) x = modn(x, p);
  trim(r1);
  IVec s0{}, s1{mpz_class(1)};
  while (r1.size() > 1) {
    auto [q, r] = fp_divmod(r0, r1, p);
    IVec s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  mpz_class ci;
  mpz_invert(ci.get_mpz_t(), r1[0].get_mpz_t(), p.get_mpz_t());
  IVec y = s1;
  for (auto& x : y) x = modn(x * ci, p);
  y.resize(k, mpz_class(0));
  // Newton: y <- y (2 - a y)
  mpz_class N = p;
  int have = 1;
  while (have < m) {
    have = std::min(2 * have, m);
    mpz_pow_ui(N.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(have));
    IVec ay = mulmod(a, y, f, N);
    for (auto& x : ay) x = -x;
    ay[0] += 2;
    y = mulmod(y, ay, f, N);
  }
  for (auto& x : y) x = modn(x, pm);
  return y;
}

}  // namespace adelix::detail
