#include "adelix/poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace adelix {

namespace {

bool is_integral_kind(RingPtr r) { return r->kind == RingKind::Integers || r->kind == RingKind::Rationals; }

}  // namespace

Poly::Poly(RingPtr r, std::vector<Scalar> c) : r_(r), c_(std::move(c)) { trim(); }

Poly Poly::from_ints(RingPtr r, const std::vector<long>& c) {
  std::vector<Scalar> s;
  for (long x : c) s.push_back(Scalar::from_long(r, x));
  return Poly(r, std::move(s));
}

Poly Poly::from_bigints(RingPtr r, const std::vector<Int>& c) {
  std::vector<Scalar> s;
  for (auto& x : c) s.push_back(Scalar::from_int(r, x));
  return Poly(r, std::move(s));
}

Poly Poly::constant(const Scalar& c) { return Poly(c.ring(), {c}); }

Poly Poly::monomial(const Scalar& c, int deg) {
  std::vector<Scalar> v(deg + 1, Scalar::zero(c.ring()));
  v[deg] = c;
  return Poly(c.ring(), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return Scalar::zero(r_);
  return c_[i];
}

Scalar Poly::lead() const {
  if (c_.empty()) return Scalar::zero(r_);
  return c_.back();
}

Poly Poly::operator+(const Poly& b) const {
  std::vector<Scalar> v(std::max(c_.size(), b.c_.size()), Scalar::zero(r_));
  for (size_t i = 0; i < v.size(); ++i) {
    if (i < c_.size()) v[i] += c_[i];
    if (i < b.c_.size()) v[i] += b.c_[i];
  }
  return Poly(r_, std::move(v));
}

Poly Poly::operator-() const {
  std::vector<Scalar> v;
  for (auto& x : c_) v.push_back(-x);
  return Poly(r_, std::move(v));
}

Poly Poly::operator-(const Poly& b) const { return *this + (-b); }

Poly Poly::operator*(const Poly& b) const {
  if (c_.empty() || b.c_.empty()) return Poly(r_);
  std::vector<Scalar> v(c_.size() + b.c_.size() - 1, Scalar::zero(r_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += c_[i] * b.c_[j];
  }
  return Poly(r_, std::move(v));
}

Poly Poly::operator*(const Scalar& s) const {
  std::vector<Scalar> v;
  for (auto& x : c_) v.push_back(x * s);
  return Poly(r_, std::move(v));
}

bool Poly::operator==(const Poly& b) const { return r_ == b.r_ && c_ == b.c_; }

std::pair<Poly, Poly> Poly::divmod(const Poly& b) const {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  Scalar li = b.lead().inv();
  Poly rem = *this;
  int db = b.degree();
  if (degree() < db) return {Poly(r_), rem};
  std::vector<Scalar> q(degree() - db + 1, Scalar::zero(r_));
  std::vector<Scalar>& rc = rem.c_;
  for (int i = degree(); i >= db; --i) {
    if (rc[i].is_zero()) continue;
    Scalar c = rc[i] * li;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) rc[i - db + j] -= c * b.c_[j];
  }
  rc.resize(db);
  rem.trim();
  return {Poly(r_, std::move(q)), rem};
}

Poly Poly::divexact(const Poly& b) const {
  if (r_->kind == RingKind::Integers) {
    RingPtr Q = ring_rationals();
    auto [q, rem] = convert(Q).divmod(b.convert(Q));
    if (!rem.is_zero()) throw DomainError("inexact polynomial division");
    for (auto& c : q.c_)
      if (c.rat().get_den() != 1) throw DomainError("inexact polynomial division over Z");
    return q.convert(r_);
  }
  auto [q, rem] = divmod(b);
  if (!rem.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

Poly Poly::derivative() const {
  std::vector<Scalar> v;
  for (int i = 1; i <= degree(); ++i) v.push_back(c_[i] * Scalar::from_long(r_, i));
  return Poly(r_, std::move(v));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inv();
}

Poly Poly::shift(int k) const {
  if (is_zero()) return *this;
  std::vector<Scalar> v(k, Scalar::zero(r_));
  v.insert(v.end(), c_.begin(), c_.end());
  return Poly(r_, std::move(v));
}

Poly Poly::reverse(int n) const {
  std::vector<Scalar> v(n + 1, Scalar::zero(r_));
  for (int i = 0; i <= degree(); ++i) {
    if (n - i < 0) throw DomainError("reverse: degree exceeds n");
    v[n - i] = c_[i];
  }
  return Poly(r_, std::move(v));
}

Poly Poly::pow(int e) const {
  Poly r = constant(Scalar::one(r_)), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly Poly::powmod(const Int& e0, const Poly& mod) const {
  Poly r = constant(Scalar::one(r_)) % mod, b = *this % mod;
  Int e = e0;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * b) % mod;
    e >>= 1;
    if (e > 0) b = (b * b) % mod;
  }
  return r;
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc = Scalar::zero(x.ring());
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i].convert(x.ring());
  return acc;
}

Poly Poly::compose(const Poly& q) const {
  Poly acc(q.ring());
  for (int i = degree(); i >= 0; --i) acc = acc * q + constant(c_[i].convert(q.ring()));
  return acc;
}

Poly Poly::convert(RingPtr target) const {
  std::vector<Scalar> v;
  for (auto& x : c_) v.push_back(x.convert(target));
  return Poly(target, std::move(v));
}

Poly Poly::lift(RingPtr target) const {
  std::vector<Scalar> v;
  for (auto& x : c_) v.push_back(x.lift(target));
  return Poly(target, std::move(v));
}

Int Poly::content() const {
  if (r_->kind != RingKind::Integers) throw DomainError("content over Z only");
  Int g = 0;
  for (auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.rat().get_num_mpz_t());
  if (!c_.empty() && lead().rat() < 0) g = -g;
  return g;
}

Poly Poly::primitive() const {
  if (is_zero()) return *this;
  if (r_->kind == RingKind::Rationals) {
    Int l = 1;
    for (auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rat().get_den_mpz_t());
    std::vector<Scalar> v;
    for (auto& c : c_) v.push_back(Scalar::from_rat(ring_integers(), c.rat() * l));
    return Poly(ring_integers(), std::move(v)).primitive();
  }
  Int g = content();
  std::vector<Scalar> v;
  for (auto& c : c_) v.push_back(Scalar::from_rat(r_, c.rat() / g));
  return Poly(r_, std::move(v));
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    std::string cs = c_[i].str();
    bool neg = false;
    if (is_integral_kind(r_) && c_[i].rat() < 0) {
      neg = true;
      cs = (-c_[i]).str();
    }
    bool simple = is_integral_kind(r_) || (r_->kind == RingKind::Galois && r_->degree() == 1);
    if (!simple) cs = "(" + cs + ")";
    if (!s.empty() || neg) s += neg ? "-" : "+";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (i == 0)
      s += cs;
    else if (cs == "1")
      s += mono;
    else
      s += cs + "*" + mono;
  }
  return s;
}

// ---------------------------------------------------------------------------

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (!a.ring()->is_field()) throw DomainError("poly_gcd needs a field");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

void poly_xgcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t) {
  RingPtr R = a.ring();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(Scalar::one(R)), s1(R);
  Poly t0(R), t1 = Poly::constant(Scalar::one(R));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    g = r0;
    s = s0;
    t = t0;
    return;
  }
  Scalar li = r0.lead().inv();
  g = r0 * li;
  s = s0 * li;
  t = t0 * li;
}

Scalar resultant(const Poly& a0, const Poly& b0) {
  RingPtr R = a0.ring();
  if (R->kind == RingKind::Integers) {
    Scalar r = resultant(a0.convert(ring_rationals()), b0.convert(ring_rationals()));
    return Scalar::from_rat(R, r.rat());
  }
  if (!R->is_field()) throw DomainError("resultant needs a field or Z");
  if (a0.is_zero() || b0.is_zero()) return Scalar::zero(R);
  Poly a = a0, b = b0;
  Scalar acc = Scalar::one(R);
  while (true) {
    int n = a.degree(), m = b.degree();
    if (m == 0) return acc * b.lead().pow(n);
    Poly r = a % b;
    if (r.is_zero()) return Scalar::zero(R);
    int dr = r.degree();
    if ((static_cast<long>(n) * m) % 2 == 1) acc = -acc;
    acc = acc * b.lead().pow(n - dr);
    a = std::move(b);
    b = std::move(r);
  }
}

Scalar discriminant(const Poly& a) {
  RingPtr R = a.ring();
  int n = a.degree();
  Scalar r = resultant(a, a.derivative());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) r = -r;
  if (R->kind == RingKind::Integers) {
    return Scalar::from_rat(R, r.rat() / a.lead().rat());
  }
  return r / a.lead();
}

// ---------------------------------------------------------------------------
// Factorization over F_p.

namespace {

void require_prime_field(RingPtr R) {
  if (R->kind != RingKind::Galois || R->m != 1 || R->degree() != 1)
    throw DomainError("factorization needs a prime field, got " + R->name);
}

Poly pth_root(const Poly& f) {
  RingPtr R = f.ring();
  long p = R->p.get_si();
  std::vector<Scalar> v;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) v.push_back(f.coeff(i));
  return Poly(R, std::move(v));
}

std::vector<Factor> squarefree_fp(const Poly& f0) {
  RingPtr R = f0.ring();
  std::vector<Factor> out;
  Poly f = f0.monic();
  if (f.degree() <= 0) return out;
  Poly one = Poly::constant(Scalar::one(R));
  Poly c = poly_gcd(f, f.derivative());
  Poly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = poly_gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) out.push_back({z, i});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    int p = static_cast<int>(R->p.get_si());
    for (auto& [g, j] : squarefree_fp(pth_root(c))) out.push_back({g, j * p});
  }
  return out;
}

std::vector<std::pair<Poly, int>> distinct_degree(Poly f) {
  RingPtr R = f.ring();
  std::vector<std::pair<Poly, int>> out;
  Poly x = Poly::x(R);
  Poly h = x % f;
  int d = 0;
  while (2 * (d + 1) <= f.degree()) {
    ++d;
    h = h.powmod(R->p, f);
    Poly g = poly_gcd(f, h - x);
    if (g.degree() > 0) {
      out.push_back({g, d});
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back({f.monic(), f.degree()});
  return out;
}

void equal_degree(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  RingPtr R = g.ring();
  Int p = R->p;
  gmp_randclass gr(gmp_randinit_default);
  gr.seed(static_cast<unsigned long>(rng()));
  while (true) {
    std::vector<Scalar> a;
    for (int i = 0; i < g.degree(); ++i) a.push_back(Scalar::from_int(R, gr.get_z_range(p)));
    Poly A(R, a);
    if (A.degree() <= 0) continue;
    Poly b;
    if (p == 2) {
      b = A % g;
      Poly s = b;
      for (int i = 1; i < d; ++i) {
        s = (s * s) % g;
        b = b + s;
      }
    } else {
      Int e = (ipow(p, d) - 1) / 2;
      b = A.powmod(e, g) - Poly::constant(Scalar::one(R));
    }
    Poly h = poly_gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    Scalar x = a.coeff(i), y = b.coeff(i);
    if (x == y) continue;
    if (x.ring()->kind == RingKind::Galois) return x.coeffs() < y.coeffs();
    return x.rat() < y.rat();
  }
  return false;
}

}  // namespace

std::vector<Factor> factor_fp(const Poly& f) {
  require_prime_field(f.ring());
  std::mt19937_64 rng(0x5eed);
  std::vector<Factor> out;
  for (auto& [s, mult] : squarefree_fp(f)) {
    for (auto& [g, d] : distinct_degree(s)) {
      std::vector<Poly> parts;
      equal_degree(g, d, rng, parts);
      for (auto& q : parts) out.push_back({q, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.f != b.f) return poly_less(a.f, b.f);
    return a.mult < b.mult;
  });
  return out;
}

bool is_irreducible_fp(const Poly& f) {
  auto fs = factor_fp(f);
  return fs.size() == 1 && fs[0].mult == 1;
}

// ---------------------------------------------------------------------------
// Hensel lifting.

namespace {

// Linear two-factor lift: f = g h mod p with g, h monic coprime mod p.
std::pair<Poly, Poly> hensel_two(const Poly& f, const Poly& g0, const Poly& h0, int m) {
  RingPtr R = f.ring();  // Galois(p, m)
  RingPtr F = ring_prime_field(R->p);
  Poly gb = g0.convert(F), hb = h0.convert(F);
  Poly d, s, t;
  poly_xgcd(gb, hb, d, s, t);
  if (d.degree() != 0) throw NotCoprime("Hensel factors share a factor mod p");
  Poly g = g0.lift(R), h = h0.lift(R);
  Int pk = R->p;
  for (int k = 1; k < m; ++k) {
    Poly e = f - g * h;
    std::vector<Scalar> ev;
    for (auto& c : e.coeffs()) {
      Int v = c.integer();
      if (!mpz_divisible_p(v.get_mpz_t(), pk.get_mpz_t())) throw DomainError("Hensel invariant broken");
      ev.push_back(Scalar::from_int(F, v / pk));
    }
    Poly eb(F, ev);
    Poly dg = (t * eb) % gb, dh = (s * eb) % hb;
    Scalar P = Scalar::from_int(R, pk);
    g = g + dg.lift(R) * P;
    h = h + dh.lift(R) * P;
    pk *= R->p;
  }
  return {g, h};
}

}  // namespace

std::vector<Poly> hensel_lift(const Poly& f0, const std::vector<Poly>& fbar, int m) {
  if (fbar.empty()) throw DomainError("no factors to lift");
  Int p = fbar[0].ring()->p;
  RingPtr R = ring_galois(p, m);
  RingPtr F = ring_prime_field(p);
  Poly f = f0.convert(R);
  if (!f.is_monic()) throw DomainError("Hensel lifting needs a monic polynomial");
  Poly prod = Poly::constant(Scalar::one(F));
  for (size_t i = 0; i < fbar.size(); ++i) {
    const Poly& g = fbar[i];
    if (!g.is_monic() || g.degree() < 1) throw DomainError("Hensel factors must be monic of positive degree");
    if (poly_gcd(g, g.derivative()).degree() > 0) throw NotSquarefreeModP("factor " + g.str() + " is not squarefree mod p");
    for (size_t j = 0; j < i; ++j) {
      if (fbar[j] == g) throw NotSquarefreeModP("repeated factor " + g.str() + " mod p");
      if (poly_gcd(fbar[j], g).degree() > 0) throw NotCoprime(fbar[j].str() + " and " + g.str());
    }
    prod = prod * g;
  }
  if (prod != f.convert(F)) throw DomainError("factors do not multiply to f mod p");
  std::vector<Poly> out;
  Poly rest = f;
  for (size_t i = 0; i + 1 < fbar.size(); ++i) {
    Poly cof = Poly::constant(Scalar::one(F));
    for (size_t j = i + 1; j < fbar.size(); ++j) cof = cof * fbar[j];
    auto [g, h] = hensel_two(rest, fbar[i], cof, m);
    out.push_back(g);
    rest = h;
  }
  out.push_back(rest);
  return out;
}

Scalar newton_root(const Poly& f, const Scalar& approx, RingPtr target) {
  Scalar a = Scalar::from_coeffs(target, approx.coeffs());
  Poly ft = f.convert(target), fd = ft.derivative();
  if (!fd.eval(a).is_unit()) throw NotSquarefreeModP("root is not simple mod p");
  for (int have = 1; have < target->m; have *= 2) a = a - ft.eval(a) / fd.eval(a);
  if (!ft.eval(a).is_zero()) throw DomainError("Newton iteration did not converge");
  return a;
}

// ---------------------------------------------------------------------------
// Factorization over Z (Zassenhaus).

namespace {

Poly to_z(const Poly& f) { return f.primitive(); }

Poly symmetric_lift(const Poly& g, const Int& pm) {
  std::vector<Scalar> v;
  Int half = pm / 2;
  for (auto& c : g.coeffs()) {
    Int x = c.integer();
    if (x > half) x -= pm;
    v.push_back(Scalar::from_int(ring_integers(), x));
  }
  return Poly(ring_integers(), std::move(v));
}

std::vector<Poly> zassenhaus(const Poly& f) {
  int n = f.degree();
  if (n <= 1) return {f};
  Int lc = f.lead().integer();
  // choose a prime with f mod p squarefree of full degree
  Int p = 2;
  RingPtr F;
  Poly fb;
  while (true) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (mpz_divisible_p(lc.get_mpz_t(), p.get_mpz_t())) continue;
    F = ring_prime_field(p);
    fb = f.convert(F);
    if (poly_gcd(fb, fb.derivative()).degree() == 0) break;
  }
  std::vector<Poly> mods;
  for (auto& fc : factor_fp(fb)) mods.push_back(fc.f);
  if (mods.size() == 1) return {f};
  // coefficient bound for factors of lc * f
  Int norm2sq = 0;
  for (auto& c : f.coeffs()) norm2sq += c.integer() * c.integer();
  Int nrm = sqrt(norm2sq) + 1;
  Int B = ipow(2, n) * nrm * abs(lc) * 2 + 1;
  int m = 1;
  Int pm = p;
  while (pm <= 2 * B) {
    pm *= p;
    ++m;
  }
  RingPtr Rm = ring_galois(p, m);
  Scalar lcinv = Scalar::from_int(Rm, lc).inv();
  Poly fmon = f.convert(Rm) * lcinv;
  std::vector<Poly> lifted = hensel_lift(fmon, mods, m);

  std::vector<Poly> result;
  Poly cur = f;
  std::vector<Poly> rem = lifted;
  size_t s = 1;
  while (2 * s <= rem.size()) {
    bool found = false;
    std::vector<int> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = static_cast<int>(i);
    while (true) {
      Int clc = cur.lead().integer();
      Poly g = Poly::constant(Scalar::from_int(Rm, clc));
      for (int i : idx) g = g * rem[i];
      Poly G = to_z(symmetric_lift(g, pm));
      try {
        Poly q = cur.divexact(G);
        result.push_back(G);
        cur = q;
        std::vector<Poly> nr;
        for (size_t i = 0; i < rem.size(); ++i)
          if (std::find(idx.begin(), idx.end(), static_cast<int>(i)) == idx.end()) nr.push_back(rem[i]);
        rem = nr;
        found = true;
      } catch (const DomainError&) {
      }
      if (found) break;
      // next combination
      int k = static_cast<int>(s) - 1;
      while (k >= 0 && idx[k] == static_cast<int>(rem.size() - s + k)) --k;
      if (k < 0) break;
      ++idx[k];
      for (size_t j = k + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  result.push_back(cur);
  return result;
}

}  // namespace

std::vector<Factor> factor_z(const Poly& f0, Int* content_out) {
  RingPtr Z = ring_integers();
  Poly f = f0.ring() == Z ? f0 : f0.convert(Z);
  if (f.is_zero()) throw DomainError("factoring zero");
  Int cont = f.content();
  if (content_out) *content_out = cont;
  Poly g = f.primitive();
  std::vector<Factor> out;
  if (g.degree() == 0) return out;
  // Yun squarefree decomposition over Q, carried back to primitive Z polys
  RingPtr Q = ring_rationals();
  Poly gq = g.convert(Q);
  Poly c = poly_gcd(gq, gq.derivative());
  Poly w = gq / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = poly_gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0)
      for (auto& h : zassenhaus(z.primitive())) out.push_back({h.primitive(), i});
    ++i;
    w = y;
    c = c / y;
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.f.degree() != b.f.degree()) return a.f.degree() < b.f.degree();
    for (int k = a.f.degree(); k >= 0; --k) {
      Rat x = a.f.coeff(k).rat(), y = b.f.coeff(k).rat();
      if (x != y) return x < y;
    }
    return a.mult < b.mult;
  });
  return out;
}

}  // namespace adelix
