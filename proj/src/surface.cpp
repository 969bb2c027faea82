#include "adelix/surface.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "adelix/parse.hpp"

namespace adelix {

namespace {

RingPtr ZZ() { return ring_integers(); }
RingPtr QQ() { return ring_rationals(); }

bool is_prime_field(RingPtr r) { return r->kind == RingKind::Galois && r->m == 1 && r->degree() == 1; }

RingPtr function_base(RingPtr r) {
  if (r->kind == RingKind::Integers || r->kind == RingKind::Rationals) return ZZ();
  if (is_prime_field(r)) return r;
  throw DomainError("rational functions are supported over Z, Q and F_p, not " + r->name);
}

Int rep(const Scalar& c) {
  if (c.ring()->kind == RingKind::Galois) return c.coeffs()[0];
  return c.integer();
}

std::vector<Int> key_of(const Poly& f) {
  std::vector<Int> k;
  for (auto& c : f.coeffs()) k.push_back(rep(c));
  return k;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto ka = key_of(a), kb = key_of(b);
  return std::lexicographical_compare(ka.rbegin(), ka.rend(), kb.rbegin(), kb.rend());
}

// Coefficients through their integer representatives, so F_p data can be
// moved into an extension ring.
Poly map_poly(const Poly& f, RingPtr R) {
  std::vector<Scalar> v;
  for (auto& c : f.coeffs()) v.push_back(Scalar::from_int(R, rep(c)));
  return Poly(R, std::move(v));
}

Int rho_factor(const Int& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    auto step = [&](const Int& v) { return Int((v * v + c) % n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Int diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(const Int& n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n]++;
    return;
  }
  Int d = rho_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// Z-polynomial from one over Q, returning the denominator that was cleared.
Poly clear_denominators(const Poly& f, Int& den) {
  den = 1;
  for (auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rat().get_den().get_mpz_t());
  std::vector<Scalar> v;
  for (auto& c : f.coeffs()) v.push_back(Scalar::from_rat(ZZ(), c.rat() * Rat(den)));
  return Poly(ZZ(), std::move(v));
}

Scalar padic_of(const Rat& q, const Int& p, int m) { return Scalar::from_rat(ring_padic(p, m), q); }

bool is_one_mod(const Scalar& x, int m) {
  if (x.is_zero() || x.valuation() != 0 || x.relprec() < m) return false;
  return x.unit_part(m).is_one();
}

std::string locus_str(const Curve& c, const ClosedPoint& x) { return "(" + c.str() + ", " + x.str() + ")"; }

std::vector<Int> primes_of(const Rat& q) {
  std::vector<Int> out;
  for (auto& [p, e] : factor_integer(q.get_num())) out.push_back(p);
  for (auto& [p, e] : factor_integer(q.get_den())) out.push_back(p);
  return out;
}

Curve curve_h(const Poly& h) {
  Curve c;
  c.kind = CurveKind::Horizontal;
  c.h = h;
  return c;
}

Poly parse_poly(RingPtr K, const std::string& text) {
  ExprAlgebra<Poly> A;
  A.number = [&](const Int& n) { return Poly::constant(Scalar::from_int(K, n)); };
  A.variable = [&](const std::string& v) {
    if (v != "t") throw ParseError("unknown variable '" + v + "'");
    return Poly::x(K);
  };
  A.add = [](const Poly& a, const Poly& b) { return a + b; };
  A.sub = [](const Poly& a, const Poly& b) { return a - b; };
  A.mul = [](const Poly& a, const Poly& b) { return a * b; };
  A.div = [](const Poly&, const Poly&) -> Poly { throw ParseError("division inside a polynomial"); };
  A.neg = [](const Poly& a) { return -a; };
  A.pow = [](const Poly& a, long e) {
    if (e < 0) throw ParseError("negative power inside a polynomial");
    return a.pow(static_cast<int>(e));
  };
  return ExprParser<Poly>(A, text).parse();
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n"), b = s.find_last_not_of(" \t\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

std::vector<std::pair<Int, int>> factor_integer(const Int& n0) {
  if (n0 == 0) throw DomainError("cannot factor 0");
  Int n = abs(n0);
  std::map<Int, int> out;
  for (long q = 2; q < 1000 && q * q <= n; ++q) {
    while (n % q == 0) {
      out[Int(q)]++;
      n /= q;
    }
  }
  factor_into(n, out);
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// RatFun

void RatFun::normalize() {
  std::vector<std::pair<Poly, long>> out;
  for (auto& [f, e] : f_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& q) { return q.first == f; });
    if (it == out.end())
      out.push_back({f, e});
    else
      it->second += e;
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& q) { return q.second == 0; }), out.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  f_ = std::move(out);
}

RatFun RatFun::constant(RingPtr base, const Scalar& c) {
  RatFun r;
  r.base_ = function_base(base);
  if (r.base_ == ZZ())
    r.c_ = Scalar::from_rat(QQ(), c.rat());
  else
    r.c_ = c.ring() == r.base_ ? c : Scalar::from_rat(r.base_, c.rat());
  if (r.c_.is_zero()) throw DomainError("zero is not a unit of the function field");
  return r;
}

RatFun RatFun::from_int(RingPtr base, long c) { return constant(base, Scalar::from_long(QQ(), c)); }

RatFun RatFun::from_poly(const Poly& f0) {
  if (f0.is_zero()) throw DomainError("zero is not a unit of the function field");
  RingPtr B = function_base(f0.ring());
  RatFun r;
  r.base_ = B;
  if (B == ZZ()) {
    Int den = 1;
    Poly f = f0.ring()->kind == RingKind::Rationals ? clear_denominators(f0, den) : f0;
    if (f.degree() == 0) {
      r.c_ = Scalar::from_rat(QQ(), Rat(f.lead().integer(), den));
      return r;
    }
    Int content;
    auto fac = factor_z(f, &content);
    r.c_ = Scalar::from_rat(QQ(), Rat(content, den));
    for (auto& x : fac) r.f_.push_back({x.f, x.mult});
  } else {
    r.c_ = f0.lead();
    if (f0.degree() > 0)
      for (auto& x : factor_fp(f0)) r.f_.push_back({x.f, x.mult});
  }
  r.normalize();
  return r;
}

RatFun RatFun::from_laurent(RingPtr base, const Laurent& f) {
  if (!f.exact()) throw DomainError("rational function from a truncated series");
  if (f.is_zero()) throw DomainError("zero is not a unit of the function field");
  RingPtr K = function_base(base) == ZZ() ? QQ() : base;
  std::vector<Scalar> c;
  for (auto& x : f.coeffs()) c.push_back(x.ring() == K ? x : Scalar::from_rat(K, x.rat()));
  return from_poly(Poly(K, c)) * t(base, f.lo());
}

RatFun RatFun::ratio(const Poly& num, const Poly& den) { return from_poly(num) / from_poly(den); }

RatFun RatFun::t(RingPtr base, long e) {
  RingPtr B = function_base(base);
  RatFun r = constant(B, Scalar::one(B == ZZ() ? QQ() : B));
  if (e != 0) r.f_.push_back({Poly::x(B), e});
  return r;
}

RatFun RatFun::operator*(const RatFun& b) const {
  if (base_ != b.base_) throw DomainError("rational functions over different bases");
  RatFun r = *this;
  r.c_ = c_ * b.c_;
  r.f_.insert(r.f_.end(), b.f_.begin(), b.f_.end());
  r.normalize();
  return r;
}

RatFun RatFun::inv() const {
  RatFun r = *this;
  r.c_ = c_.inv();
  for (auto& q : r.f_) q.second = -q.second;
  return r;
}

RatFun RatFun::pow(long e) const {
  RatFun r = *this;
  r.c_ = c_.pow(e);
  for (auto& q : r.f_) q.second *= e;
  r.normalize();
  return r;
}

bool RatFun::operator==(const RatFun& b) const {
  if (base_ != b.base_ || c_ != b.c_ || f_.size() != b.f_.size()) return false;
  for (size_t i = 0; i < f_.size(); ++i)
    if (f_[i].first != b.f_[i].first || f_[i].second != b.f_[i].second) return false;
  return true;
}

long RatFun::degree() const {
  long d = 0;
  for (auto& [f, e] : f_) d += e * f.degree();
  return d;
}

long RatFun::order(const Poly& h) const {
  for (auto& [f, e] : f_)
    if (f == h) return e;
  return 0;
}

long RatFun::pval(const Int& p) const {
  if (base_ != ZZ()) throw DomainError("vertical valuations need the base Z");
  return c_.pval(p);
}

std::pair<Poly, Poly> RatFun::expand() const {
  Poly num, den;
  if (base_ == ZZ()) {
    num = Poly::constant(Scalar::from_int(ZZ(), c_.rat().get_num()));
    den = Poly::constant(Scalar::from_int(ZZ(), c_.rat().get_den()));
  } else {
    num = Poly::constant(c_);
    den = Poly::constant(Scalar::one(base_));
  }
  for (auto& [f, e] : f_) (e > 0 ? num : den) *= f.pow(static_cast<int>(std::abs(e)));
  return {num, den};
}

Scalar RatFun::eval(const Scalar& x) const {
  RingPtr R = x.ring();
  Scalar acc = base_ == ZZ() ? Scalar::from_rat(R, c_.rat()) : Scalar::from_int(R, rep(c_));
  for (auto& [f, e] : f_) acc *= map_poly(f, R).eval(x).pow(e);
  return acc;
}

std::string RatFun::str() const {
  std::string s = c_.str();
  bool show_c = !(c_.is_one() && !f_.empty());
  std::string out = show_c ? s : "";
  for (auto& [f, e] : f_) {
    if (!out.empty()) out += "*";
    out += "(" + f.str() + ")";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

RatFun parse_ratfun(RingPtr base, const std::string& text) {
  RingPtr B = function_base(base);
  RingPtr K = B == ZZ() ? QQ() : B;
  using V = std::pair<Poly, Poly>;
  ExprAlgebra<V> A;
  A.number = [&](const Int& n) { return V{Poly::constant(Scalar::from_int(K, n)), Poly::constant(Scalar::one(K))}; };
  A.variable = [&](const std::string& v) {
    if (v != "t") throw ParseError("unknown variable '" + v + "'");
    return V{Poly::x(K), Poly::constant(Scalar::one(K))};
  };
  A.add = [](const V& a, const V& b) { return V{a.first * b.second + b.first * a.second, a.second * b.second}; };
  A.sub = [](const V& a, const V& b) { return V{a.first * b.second - b.first * a.second, a.second * b.second}; };
  A.mul = [](const V& a, const V& b) { return V{a.first * b.first, a.second * b.second}; };
  A.div = [](const V& a, const V& b) {
    if (b.first.is_zero()) throw DomainError("division by zero");
    return V{a.first * b.second, a.second * b.first};
  };
  A.neg = [](const V& a) { return V{-a.first, a.second}; };
  A.pow = [](const V& a, long e) {
    if (e < 0) {
      if (a.first.is_zero()) throw DomainError("division by zero");
      return V{a.second.pow(static_cast<int>(-e)), a.first.pow(static_cast<int>(-e))};
    }
    return V{a.first.pow(static_cast<int>(e)), a.second.pow(static_cast<int>(e))};
  };
  V v = ExprParser<V>(A, text).parse();
  return RatFun::ratio(v.first, v.second);
}

// ---------------------------------------------------------------------------
// Curves and closed points

Curve Curve::horizontal(const Poly& h0) {
  Int den = 1;
  Poly h = h0.ring()->kind == RingKind::Rationals ? clear_denominators(h0, den) : h0;
  if (h.ring()->kind != RingKind::Integers) throw DomainError("horizontal curves need a polynomial over Z");
  if (h.degree() < 1) throw DomainError("a horizontal curve needs a nonconstant polynomial");
  Int content;
  auto fac = factor_z(h, &content);
  if (fac.size() != 1 || fac[0].mult != 1) throw DomainError("not irreducible over Q: " + h.str());
  return curve_h(fac[0].f);
}

Curve Curve::infinity() {
  Curve c;
  c.kind = CurveKind::Infinity;
  return c;
}

Curve Curve::vertical(const Int& p) {
  if (p < 2 || !is_probable_prime(p)) throw DomainError("vertical fibers need a prime, got " + p.get_str());
  Curve c;
  c.kind = CurveKind::Vertical;
  c.p = p;
  return c;
}

RatFun Curve::equation() const {
  switch (kind) {
    case CurveKind::Horizontal: return RatFun::from_poly(h);
    case CurveKind::Infinity: return RatFun::t(ZZ(), -1);
    case CurveKind::Vertical: return RatFun::constant(ZZ(), Scalar::from_int(QQ(), p));
  }
  return {};
}

std::string Curve::str() const {
  switch (kind) {
    case CurveKind::Infinity: return "Hinf";
    case CurveKind::Vertical: return "V" + p.get_str();
    case CurveKind::Horizontal:
      if (h.degree() == 1 && h.lead().is_one()) return "H" + Int(-h.coeff(0).integer()).get_str();
      return "H[" + h.str() + "]";
  }
  return "";
}

bool Curve::operator==(const Curve& b) const {
  if (kind != b.kind) return false;
  if (kind == CurveKind::Vertical) return p == b.p;
  if (kind == CurveKind::Horizontal) return h == b.h;
  return true;
}

bool Curve::operator<(const Curve& b) const {
  if (kind != b.kind) return static_cast<int>(kind) < static_cast<int>(b.kind);
  if (kind == CurveKind::Vertical) return p < b.p;
  if (kind == CurveKind::Horizontal) return poly_less(h, b.h);
  return false;
}

ClosedPoint ClosedPoint::finite(const Poly& fbar) {
  RingPtr R = fbar.ring();
  if (!is_prime_field(R)) throw DomainError("closed points need a residue polynomial over F_p");
  if (fbar.degree() < 1 || !is_irreducible_fp(fbar)) throw DomainError("residue polynomial is not irreducible: " + fbar.str());
  ClosedPoint x;
  x.p = R->p;
  x.fbar = fbar.monic();
  return x;
}

ClosedPoint ClosedPoint::infinity(const Int& p) {
  if (p < 2 || !is_probable_prime(p)) throw DomainError("closed points need a prime, got " + p.get_str());
  ClosedPoint x;
  x.p = p;
  x.at_infinity = true;
  return x;
}

ClosedPoint ClosedPoint::parse(const std::string& text0) {
  std::string text = trim(text0);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') throw ParseError("closed point must look like (p, f): " + text0);
  std::string body = text.substr(1, text.size() - 2);
  size_t comma = body.find(',');
  if (comma == std::string::npos) throw ParseError("closed point must look like (p, f): " + text0);
  std::string ps = trim(body.substr(0, comma)), fs = trim(body.substr(comma + 1));
  Int p;
  if (p.set_str(ps, 10) != 0) throw ParseError("bad prime '" + ps + "'");
  if (fs == "inf" || fs == "oo" || fs == "infinity") return infinity(p);
  if (p < 2 || !is_probable_prime(p)) throw DomainError("closed points need a prime, got " + ps);
  return finite(parse_poly(ring_prime_field(p), fs));
}

std::string ClosedPoint::str() const { return "(" + p.get_str() + ", " + (at_infinity ? "inf" : fbar.str()) + ")"; }

bool ClosedPoint::operator==(const ClosedPoint& b) const {
  return p == b.p && at_infinity == b.at_infinity && (at_infinity || fbar == b.fbar);
}

bool ClosedPoint::operator<(const ClosedPoint& b) const {
  if (p != b.p) return p < b.p;
  if (at_infinity != b.at_infinity) return b.at_infinity;
  if (at_infinity) return false;
  return poly_less(fbar, b.fbar);
}

bool lies_on(const ClosedPoint& x, const Curve& c) {
  switch (c.kind) {
    case CurveKind::Vertical: return x.p == c.p;
    case CurveKind::Infinity: return x.at_infinity;
    case CurveKind::Horizontal: {
      if (x.at_infinity) return c.h.lead().integer() % x.p == 0;
      Poly hb = c.h.convert(ring_prime_field(x.p));
      return !hb.is_zero() && (hb % x.fbar).is_zero();
    }
  }
  return false;
}

long valuation_at(const Curve& c, const RatFun& f) {
  switch (c.kind) {
    case CurveKind::Vertical: return f.pval(c.p);
    case CurveKind::Infinity: return -f.degree();
    case CurveKind::Horizontal: return f.order(c.h);
  }
  return 0;
}

std::vector<ClosedPoint> points_over(const Curve& c, const Int& p) {
  if (c.kind == CurveKind::Vertical) throw DomainError("points_over needs a horizontal curve");
  if (c.kind == CurveKind::Infinity) return {ClosedPoint::infinity(p)};
  std::vector<ClosedPoint> out;
  Poly hb = c.h.convert(ring_prime_field(p));
  if (hb.degree() >= 1)
    for (auto& f : factor_fp(hb)) out.push_back(ClosedPoint::finite(f.f));
  if (hb.degree() < c.h.degree()) out.push_back(ClosedPoint::infinity(p));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Branches

namespace {

std::vector<Int> residue_modulus(const ClosedPoint& x) {
  if (x.degree() < 2) return {};
  return key_of(x.fbar);
}

// Root of the integer polynomial h in W_r(F_q) lifting the residue point.
Scalar lift_point_root(const Poly& h, const ClosedPoint& x, int r) {
  std::vector<Int> mod = residue_modulus(x);
  RingPtr W = ring_galois(x.p, r, mod);
  Scalar approx = x.degree() >= 2 ? Scalar::generator(ring_galois(x.p, 1, mod))
                                  : -Scalar::from_int(ring_prime_field(x.p), rep(x.fbar.coeff(0)));
  return newton_root(h, approx, W);
}

Branch branch_at(const Curve& c, const ClosedPoint& x, int r) {
  Branch b;
  b.at_infinity = x.at_infinity;
  try {
    if (c.kind == CurveKind::Infinity) {
      b.field = ring_padic(x.p, r);
      b.theta = Scalar::zero(b.field);
    } else if (x.at_infinity) {
      Poly hr = c.h.reverse(c.h.degree());
      Scalar th = newton_root(hr, Scalar::zero(ring_prime_field(x.p)), ring_galois(x.p, r));
      b.field = ring_padic(x.p, r);
      b.theta = th.convert(b.field);
    } else {
      Scalar th = lift_point_root(c.h, x, r);
      b.field = ring_padic(x.p, r, residue_modulus(x));
      b.theta = th.convert(b.field);
    }
  } catch (const NotSquarefreeModP&) {
    throw NotSquarefreeModP("ramified branch of " + c.str() + " at " + x.str());
  }
  return b;
}

std::string field_name(const Int& p, int k) { return k == 1 ? "Q_" + p.get_str() : "Q_" + p.get_str() + "^" + std::to_string(k); }

}  // namespace

std::string Multicompletion::str() const {
  std::ostringstream os;
  os << locus_str(eta1, eta2) << ": " << ring << " with fraction field " << field;
  for (size_t i = 0; i < branches.size(); ++i) {
    auto& b = branches[i];
    std::string var = b.at_infinity ? "1/t" : "t";
    os << "\n  branch " << i << ": " << (b.theta.is_zero() ? var : var + " - (" + b.theta.str() + ")");
  }
  return os.str();
}

Multicompletion multicompletion(const Curve& eta1, const ClosedPoint& eta2, int prec) {
  if (!lies_on(eta2, eta1)) throw DomainError(eta2.str() + " does not lie on " + eta1.str());
  Multicompletion M;
  M.eta1 = eta1;
  M.eta2 = eta2;
  int k = eta2.degree();
  std::string q = k == 1 ? eta2.p.get_str() : eta2.p.get_str() + "^" + std::to_string(k);
  if (eta1.kind == CurveKind::Vertical) {
    std::string u = eta2.at_infinity ? "1/t" : eta2.fbar.str();
    if (u != "t") u = "u, u = " + u;
    M.ring = "W(F_" + q + "){{" + u + "}}";
    M.field = field_name(eta2.p, k) + "{{" + (eta2.at_infinity ? std::string("1/t") : eta2.fbar.str()) + "}}";
    return M;
  }
  Branch b = branch_at(eta1, eta2, prec);
  M.branches.push_back(b);
  std::string var = eta2.at_infinity ? "1/t" : "t";
  std::string ta = b.theta.is_zero() ? var : var + " - (" + b.theta.str() + ")";
  M.ring = field_name(eta2.p, k) + "[[" + ta + "]]";
  M.field = field_name(eta2.p, k) + "((" + ta + "))";
  return M;
}

// ---------------------------------------------------------------------------
// Local pushdowns

namespace {

struct Leading {
  int v = 0;
  Scalar lead;
};

// Valuation and leading coefficient of f along the branch t_a = t - theta
// (or 1/t - theta at infinity) of the horizontal curve c.
Leading branch_leading(const Curve& c, const Branch& b, const RatFun& f) {
  RingPtr F = b.field;
  Leading L;
  L.lead = Scalar::from_rat(F, f.const_part().rat());
  if (c.kind == CurveKind::Infinity) {
    L.v = static_cast<int>(-f.degree());
    for (auto& [fi, e] : f.factors()) L.lead *= Scalar::from_int(F, fi.lead().integer()).pow(e);
    return L;
  }
  for (auto& [fi, e] : f.factors()) {
    Poly fF = map_poly(fi, F);
    Scalar li;
    bool on = fi == c.h;
    if (on) L.v += static_cast<int>(e);
    if (!b.at_infinity) {
      li = on ? fF.derivative().eval(b.theta) : fF.eval(b.theta);
    } else {
      Poly rev = fF.reverse(fi.degree());
      li = (on ? rev.derivative().eval(b.theta) : rev.eval(b.theta)) * b.theta.pow(-fi.degree());
    }
    L.lead *= li.pow(e);
  }
  return L;
}

Scalar horizontal_value(const Curve& c, const ClosedPoint& x, const RatFun& f, const RatFun& g, int r) {
  Branch b = branch_at(c, x, r);
  Leading a = branch_leading(c, b, f), bb = branch_leading(c, b, g);
  return norm_k1(tame_from_leading(a.v, a.lead, bb.v, bb.lead));
}

// f(T(u)) in W((u)) for the parameter u at a closed point of the fiber.
struct FiberChart {
  RingPtr F, W;
  int N = 0;
  bool at_infinity = false;
  Laurent T;  // t as a series in u (finite points)

  Laurent series(const Poly& fi) const {
    if (at_infinity) return Laurent::from_poly(map_poly(fi, W)).invert_variable().truncate(N);
    return eval_poly(fi, T).truncate(N);
  }
  TwoDim element(const RatFun& f) const {
    TwoDim acc = TwoDim::from_scalar(Scalar::from_rat(F, f.const_part().rat()), N);
    for (auto& [fi, e] : f.factors()) acc = acc * TwoDim(F, 0, series(fi)).pow(e);
    return acc;
  }
};

FiberChart fiber_chart(const ClosedPoint& x, int r, int N) {
  FiberChart C;
  C.N = N;
  C.at_infinity = x.at_infinity;
  std::vector<Int> mod = residue_modulus(x);
  C.F = ring_padic(x.p, r, mod);
  C.W = ring_galois(x.p, r, mod);
  if (x.at_infinity) return C;
  Poly pi = Poly::from_bigints(ZZ(), key_of(x.fbar));
  Scalar theta = lift_point_root(pi, x, r);
  if (pi.degree() == 1) {
    C.T = Laurent(C.W, 0, {theta, Scalar::one(C.W)}).truncate(N);
    return C;
  }
  // Newton iteration on pi(T) = u from T(0) = theta.
  Laurent u = Laurent::monomial(Scalar::one(C.W), 1, N);
  Poly dpi = pi.derivative();
  Laurent T = Laurent::constant(theta, N);
  for (int have = 1; have < 2 * (N + r); have *= 2) T = (T - (eval_poly(pi, T) - u) * eval_poly(dpi, T).inv(N)).truncate(N);
  C.T = T;
  return C;
}

Scalar vertical_value(const ClosedPoint& x, const RatFun& f, const RatFun& g, int m, int r, int N) {
  FiberChart C = fiber_chart(x, r, N);
  Scalar res = kato_pair(C.element(f), C.element(g), m);
  return norm_k1(res.inv());
}

}  // namespace

Scalar local_pushdown(const Curve& eta1, const ClosedPoint& eta2, const RatFun& f, const RatFun& g, int m) {
  if (!lies_on(eta2, eta1)) throw DomainError(eta2.str() + " does not lie on " + eta1.str());
  if (f.base() != ZZ() || g.base() != ZZ()) throw DomainError("pushdowns on the surface need functions over Q");
  const Int& p = eta2.p;
  RingPtr target = ring_padic(p, m);
  // units along a horizontal curve have trivial tame symbol on every branch,
  // ramified or not
  if (eta1.kind != CurveKind::Vertical && valuation_at(eta1, f) == 0 && valuation_at(eta1, g) == 0)
    return Scalar::one(target);
  std::string why;
  for (int attempt = 0; attempt < 6; ++attempt) {
    int guard = 4 << attempt;
    int N = 16 << attempt;
    try {
      Scalar v = eta1.kind == CurveKind::Vertical ? vertical_value(eta2, f, g, m, m + guard, N)
                                                  : horizontal_value(eta1, eta2, f, g, m + guard);
      if (!v.is_zero() && v.relprec() >= m) return v.convert(target);
      why = "relative precision " + std::to_string(v.relprec());
    } catch (const PrecisionExhausted& e) {
      why = e.what();
    }
  }
  throw PrecisionExhausted("local pushdown at " + locus_str(eta1, eta2) + " did not reach p^" + std::to_string(m) + " (" +
                           why + ")");
}

// ---------------------------------------------------------------------------
// Ideles

IdeleClass IdeleClass::diagonal(const Scalar& q, const std::vector<Int>& primes, int m) {
  IdeleClass x(m);
  for (auto& p : primes) x.comps[p] = padic_of(q.rat(), p, m);
  return x;
}

void IdeleClass::multiply(const Int& p, const Scalar& x) {
  Scalar y = x.ring() == ring_padic(p, precision) ? x : x.convert(ring_padic(p, precision));
  auto it = comps.find(p);
  if (it == comps.end())
    comps[p] = y;
  else
    it->second *= y;
}

Scalar IdeleClass::at(const Int& p) const {
  auto it = comps.find(p);
  return it == comps.end() ? Scalar::one(ring_padic(p, precision)) : it->second;
}

int IdeleClass::valuation(const Int& p) const { return at(p).valuation(); }

Int IdeleClass::unit_residue(const Int& p) const { return at(p).unit_part(precision).coeffs()[0]; }

IdeleClass IdeleClass::operator*(const IdeleClass& b) const {
  IdeleClass r(std::min(precision, b.precision));
  for (auto& [p, x] : comps) r.multiply(p, x);
  for (auto& [p, x] : b.comps) r.multiply(p, x);
  return r;
}

IdeleClass IdeleClass::inv() const {
  IdeleClass r(precision);
  for (auto& [p, x] : comps) r.comps[p] = x.inv();
  return r;
}

std::vector<Int> IdeleClass::support() const {
  std::vector<Int> out;
  for (auto& [p, x] : comps)
    if (x.valuation() != 0) out.push_back(p);
  return out;
}

std::string IdeleClass::str() const {
  if (comps.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto& [p, x] : comps) {
    os << (first ? "" : ", ") << p.get_str() << ": " << x.str();
    first = false;
  }
  return os.str();
}

MembershipReport class_membership(const IdeleClass& x) {
  MembershipReport R;
  Rat q = 1;
  for (auto& [p, xp] : x.comps) {
    if (xp.is_zero() || xp.relprec() == 0) {
      R.detail = "component at " + p.get_str() + " carries no precision";
      R.candidate = Scalar::one(QQ());
      return R;
    }
    int v = xp.valuation();
    q *= v >= 0 ? Rat(ipow(p, v)) : Rat(1, ipow(p, -v));
  }
  R.candidate = Scalar::from_rat(QQ(), q);
  for (auto& [p, xp] : x.comps) {
    Scalar u = xp / padic_of(q, p, x.precision);
    if (u.valuation() != 0) {
      R.detail = "quotient by " + R.candidate.str() + " is not a unit at " + p.get_str();
      return R;
    }
  }
  R.passed = true;
  R.detail = "x / " + R.candidate.str() + " is a unit at all " + std::to_string(x.comps.size()) +
             " stored places, certified to relative precision p^" + std::to_string(x.precision);
  return R;
}

bool same_class(const IdeleClass& a, const IdeleClass& b) { return class_membership(a * b.inv()).passed; }

bool idele_agree(const IdeleClass& a, const IdeleClass& b, const std::vector<Int>& places, int m) {
  std::set<Int> all;
  for (auto& [p, x] : a.comps) all.insert(p);
  for (auto& [p, x] : b.comps) all.insert(p);
  for (auto& p : all)
    if (a.valuation(p) != b.valuation(p)) return false;
  for (auto& p : places)
    if (!is_one_mod(a.at(p) / b.at(p), m)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Cocycles

std::string AdelicK2Cocycle::str() const {
  if (comps.empty()) return "1";
  std::ostringstream os;
  for (auto& c : comps)
    os << locus_str(c.eta1, c.eta2) << ": {" << c.a.str() << ", " << c.b.str() << "}^" << c.e << "\n";
  return os.str();
}

IdeleClass pushdown(const AdelicK2Cocycle& z, int m) {
  IdeleClass x(m);
  for (auto& c : z.comps) x.multiply(c.eta2.p, local_pushdown(c.eta1, c.eta2, c.a, c.b, m).pow(c.e));
  return x;
}

bool check_witnesses(const AdelicK2Cocycle& z) {
  for (auto& c : z.comps) {
    if (!lies_on(c.eta2, c.eta1)) return false;
    bool au = valuation_at(c.eta1, c.a) == 0, bu = valuation_at(c.eta1, c.b) == 0;
    if (c.a_unit != au || c.integral != (au && bu)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Divisors

DivisorLB DivisorLB::parse(const std::string& s) {
  DivisorLB D;
  size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto number = [&](bool allow_sign) {
    size_t st = i;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    std::string t = s.substr(st, i - st);
    if (t.empty() || t == "-" || t == "+") throw ParseError("number expected at position " + std::to_string(st) + " in '" + s + "'");
    return Int(t[0] == '+' ? t.substr(1) : t);
  };
  bool first = true;
  while (true) {
    skip();
    if (i >= s.size()) break;
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("'+' or '-' expected at position " + std::to_string(i) + " in '" + s + "'");
    }
    first = false;
    long n = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      n = number(false).get_si();
      skip();
      if (i < s.size() && s[i] == '*') ++i;
      skip();
    }
    if (i >= s.size()) throw ParseError("divisor component expected in '" + s + "'");
    char k = s[i++];
    Curve c;
    if (k == 'V') {
      c = Curve::vertical(number(false));
    } else if (k == 'H') {
      if (s.compare(i, 3, "inf") == 0) {
        i += 3;
        c = Curve::infinity();
      } else if (i < s.size() && s[i] == '[') {
        size_t close = s.find(']', i);
        if (close == std::string::npos) throw ParseError("']' expected in '" + s + "'");
        c = Curve::horizontal(parse_poly(ZZ(), s.substr(i + 1, close - i - 1)));
        i = close + 1;
      } else {
        Int a = number(true);
        c = curve_h(Poly(ZZ(), {Scalar::from_int(ZZ(), -a), Scalar::one(ZZ())}));
      }
    } else {
      throw ParseError("unknown divisor component '" + std::string(1, k) + "' in '" + s + "'");
    }
    D = D + of(c, sign * n);
  }
  return D;
}

DivisorLB DivisorLB::of(const Curve& c, long n) {
  DivisorLB D;
  if (n != 0) D.parts.push_back({c, n});
  return D;
}

DivisorLB DivisorLB::operator+(const DivisorLB& b) const {
  DivisorLB D = *this;
  for (auto& [c, n] : b.parts) {
    auto it = std::find_if(D.parts.begin(), D.parts.end(), [&](const auto& q) { return q.first == c; });
    if (it == D.parts.end())
      D.parts.push_back({c, n});
    else
      it->second += n;
  }
  D.parts.erase(std::remove_if(D.parts.begin(), D.parts.end(), [](const auto& q) { return q.second == 0; }), D.parts.end());
  std::sort(D.parts.begin(), D.parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return D;
}

long DivisorLB::multiplicity(const Curve& c) const {
  for (auto& [d, n] : parts)
    if (d == c) return n;
  return 0;
}

long DivisorLB::degree() const {
  long d = 0;
  for (auto& [c, n] : parts) {
    if (c.kind == CurveKind::Horizontal) d += n * c.h.degree();
    if (c.kind == CurveKind::Infinity) d += n;
  }
  return d;
}

RatFun DivisorLB::local_equation(const ClosedPoint& x) const {
  RatFun r = RatFun::from_int(ZZ(), 1);
  for (auto& [c, n] : parts) {
    if (!lies_on(x, c)) continue;
    RatFun e = c.equation();
    if (c.kind == CurveKind::Horizontal && x.at_infinity) e = e * RatFun::t(ZZ(), -c.h.degree());
    r = r * e.pow(n);
  }
  return r;
}

RatFun DivisorLB::section() const {
  RatFun r = RatFun::from_int(ZZ(), 1);
  for (auto& [c, n] : parts)
    if (c.kind != CurveKind::Infinity) r = r * c.equation().pow(n);
  return r;
}

std::string DivisorLB::str() const {
  if (parts.empty()) return "0";
  std::string s;
  for (auto& [c, n] : parts) {
    long a = std::abs(n);
    if (!s.empty())
      s += n < 0 ? " - " : " + ";
    else if (n < 0)
      s += "-";
    if (a != 1) s += std::to_string(a) + "*";
    s += c.str();
  }
  return s;
}

namespace {

// Closed points where two distinct codimension-one points meet.
std::vector<ClosedPoint> intersection(const Curve& a, const Curve& b) {
  if (a.kind == CurveKind::Vertical && b.kind == CurveKind::Vertical) return {};
  if (a.kind == CurveKind::Vertical) return points_over(b, a.p);
  if (b.kind == CurveKind::Vertical) return points_over(a, b.p);
  std::set<Int> primes;
  auto add = [&](const Int& n) {
    if (n != 0)
      for (auto& [p, e] : factor_integer(n)) primes.insert(p);
  };
  if (a.kind == CurveKind::Horizontal) add(a.h.lead().integer());
  if (b.kind == CurveKind::Horizontal) add(b.h.lead().integer());
  if (a.kind == CurveKind::Horizontal && b.kind == CurveKind::Horizontal) add(resultant(a.h, b.h).integer());
  std::vector<ClosedPoint> out;
  for (auto& p : primes)
    for (auto& x : points_over(a, p))
      if (lies_on(x, b)) out.push_back(x);
  return out;
}

}  // namespace

AdelicK2Cocycle chern_pair(const DivisorLB& L, const DivisorLB& M) {
  for (auto& [c, n] : M.parts)
    if (L.multiplicity(c) != 0) throw SharedComponent("both divisors contain " + c.str());
  AdelicK2Cocycle z;
  for (auto& [eta1, n1] : M.parts) {
    std::set<ClosedPoint> pts;
    for (auto& [c, n] : L.parts)
      for (auto& x : intersection(eta1, c)) pts.insert(x);
    for (auto& x : pts) {
      CocycleComponent k;
      k.eta1 = eta1;
      k.eta2 = x;
      k.a = L.local_equation(x);
      k.b = eta1.equation();
      k.e = n1;
      k.a_unit = valuation_at(eta1, k.a) == 0;
      k.integral = k.a_unit && valuation_at(eta1, k.b) == 0;
      z.comps.push_back(std::move(k));
    }
  }
  return z;
}

// ---------------------------------------------------------------------------
// Reciprocity

std::string ReciprocityReport::str() const {
  std::ostringstream os;
  os << kind << " reciprocity (precision " << precision << "): " << (passed ? "pass" : "FAIL") << "\n";
  for (auto& c : parts) os << "  " << c.locus << ": " << c.value.str() << "\n";
  os << "  product: " << product.str();
  return os.str();
}

ReciprocityReport reciprocity_vertical(const RatFun& f, const RatFun& g, const Int& p, int m) {
  ReciprocityReport R;
  R.kind = "vertical";
  R.precision = m;
  Curve V = Curve::vertical(p);
  std::set<ClosedPoint> pts{ClosedPoint::infinity(p)};
  for (const RatFun* h : {&f, &g})
    for (auto& [fi, e] : h->factors()) {
      Poly fb = fi.convert(ring_prime_field(p));
      if (fb.degree() >= 1)
        for (auto& q : factor_fp(fb)) pts.insert(ClosedPoint::finite(q.f));
    }
  Scalar prod = Scalar::one(ring_padic(p, m));
  for (auto& x : pts) {
    Scalar v = local_pushdown(V, x, f, g, m);
    R.parts.push_back({locus_str(V, x), v});
    prod *= v;
  }
  R.product = prod;
  R.passed = is_one_mod(prod, m);
  return R;
}

ReciprocityReport reciprocity_point(const RatFun& f, const RatFun& g, const ClosedPoint& x, int m) {
  ReciprocityReport R;
  R.kind = "point";
  R.precision = m;
  std::set<Curve> curves{Curve::vertical(x.p)};
  if (x.at_infinity) curves.insert(Curve::infinity());
  for (const RatFun* h : {&f, &g})
    for (auto& [fi, e] : h->factors()) {
      Curve c = curve_h(fi);
      if (lies_on(x, c)) curves.insert(c);
    }
  Scalar prod = Scalar::one(ring_padic(x.p, m));
  for (auto& c : curves) {
    Scalar v = local_pushdown(c, x, f, g, m);
    R.parts.push_back({locus_str(c, x), v});
    prod *= v;
  }
  R.product = prod;
  R.passed = is_one_mod(prod, m);
  return R;
}

namespace {

Rat rat_pow(const Rat& a, long e) {
  Rat r = 1;
  for (long i = 0; i < std::abs(e); ++i) r *= a;
  if (e < 0) r = 1 / r;
  r.canonicalize();
  return r;
}

// Leading coefficient of f along h with uniformizer h, as a rational
// function whose value at a root of h is the residue; its norm to Q.
Rat norm_of_residue_lead(const Curve& h, const RatFun& f) {
  if (h.kind == CurveKind::Infinity) {
    Rat r = f.const_part().rat();
    for (auto& [fi, e] : f.factors()) r *= rat_pow(Rat(fi.lead().integer()), e);
    r.canonicalize();
    return r;
  }
  int d = h.h.degree();
  Rat r = 1, c = f.const_part().rat();
  for (int i = 0; i < d; ++i) r *= c;
  Rat lc = Rat(h.h.lead().integer());
  for (auto& [fi, e] : f.factors()) {
    if (fi == h.h) continue;
    // prod over the roots theta of h of fi(theta) = Res(h, fi) / lc(h)^deg fi
    Rat n = resultant(h.h, fi).rat();
    for (int i = 0; i < fi.degree(); ++i) n /= lc;
    Rat pw = 1;
    for (long i = 0; i < std::abs(e); ++i) pw *= n;
    r *= e >= 0 ? pw : 1 / pw;
  }
  r.canonicalize();
  return r;
}

}  // namespace

ReciprocityReport reciprocity_horizontal(const RatFun& f, const RatFun& g, const Curve& h, int m) {
  if (h.kind == CurveKind::Vertical) throw DomainError("horizontal reciprocity needs a horizontal curve");
  ReciprocityReport R;
  R.kind = "horizontal";
  R.precision = m;
  long va = valuation_at(h, f), vb = valuation_at(h, g);
  int d = h.kind == CurveKind::Infinity ? 1 : h.h.degree();
  Rat nu = rat_pow(norm_of_residue_lead(h, f), vb) * rat_pow(norm_of_residue_lead(h, g), -va);
  if ((va * vb * d) % 2 != 0) nu = -nu;
  nu.canonicalize();
  R.product = Scalar::from_rat(QQ(), nu);

  std::set<Int> S;
  auto add = [&](const Rat& q) {
    for (auto& p : primes_of(q)) S.insert(p);
  };
  add(nu);
  add(f.const_part().rat());
  add(g.const_part().rat());
  if (h.kind == CurveKind::Horizontal) {
    add(Rat(h.h.lead().integer()));
    if (va != 0 || vb != 0) add(discriminant(h.h).rat());
  }
  for (const RatFun* q : {&f, &g})
    for (auto& [fi, e] : q->factors()) {
      add(Rat(fi.lead().integer()));
      if (h.kind == CurveKind::Horizontal && !(fi == h.h)) add(resultant(h.h, fi).rat());
    }
  R.passed = true;
  for (auto& p : S) {
    Scalar local = Scalar::one(ring_padic(p, m));
    for (auto& x : points_over(h, p)) local *= local_pushdown(h, x, f, g, m);
    R.parts.push_back({"p = " + p.get_str(), local});
    if (!is_one_mod(local / padic_of(nu, p, m), m)) R.passed = false;
  }
  return R;
}

ReciprocityReport weil_reciprocity(const RatFun& f, const RatFun& g) {
  RingPtr K = f.base();
  if (!is_prime_field(K) || g.base() != K) throw DomainError("Weil reciprocity needs functions over one prime field");
  ReciprocityReport R;
  R.kind = "Weil";
  std::set<std::vector<Int>> seen;
  std::vector<Poly> places;
  for (const RatFun* h : {&f, &g})
    for (auto& [fi, e] : h->factors())
      if (seen.insert(key_of(fi)).second) places.push_back(fi);
  std::sort(places.begin(), places.end(), poly_less);
  Scalar prod = Scalar::one(K);
  auto lead_at = [&](const Poly& pi, RingPtr F, const Scalar& theta, const RatFun& q, int& v) {
    v = static_cast<int>(q.order(pi));
    Scalar l = Scalar::from_int(F, rep(q.const_part()));
    for (auto& [fi, e] : q.factors())
      if (!(fi == pi)) l *= map_poly(fi, F).eval(theta).pow(e);
    return l;
  };
  for (auto& pi : places) {
    int k = pi.degree();
    RingPtr F = k == 1 ? K : ring_galois(K->p, 1, key_of(pi));
    Scalar theta = k == 1 ? -pi.coeff(0) : Scalar::generator(F);
    int va = 0, vb = 0;
    Scalar a0 = lead_at(pi, F, theta, f, va), b0 = lead_at(pi, F, theta, g, vb);
    Scalar v = norm_k1(tame_from_leading(va, a0, vb, b0));
    R.parts.push_back({"(" + pi.str() + ")", v});
    prod *= v;
  }
  Scalar v = tame_from_leading(static_cast<int>(-f.degree()), f.const_part(), static_cast<int>(-g.degree()), g.const_part());
  R.parts.push_back({"inf", v});
  prod *= v;
  R.product = prod;
  R.passed = prod.is_one();
  return R;
}

// ---------------------------------------------------------------------------
// Deligne pairing

std::string DeligneReport::str() const {
  std::ostringstream os;
  os << "pairing side: " << pairing_side.str() << "\nnorm side: " << norm_side.str() << " (N = " << norm_value.str()
     << ")\nverdict: " << (passed ? "pass" : "FAIL");
  return os.str();
}

DeligneReport deligne_compare(const DivisorLB& L, const DivisorLB& M, int m) {
  if (M.parts.size() != 1 || M.parts[0].first.kind != CurveKind::Horizontal)
    throw DomainError("the second divisor must be a single horizontal curve");
  const Curve& h = M.parts[0].first;
  long nM = M.parts[0].second;
  DeligneReport R;
  R.pairing_side = pushdown(chern_pair(L, M), m);

  Int lc = h.h.lead().integer();
  long k = -L.multiplicity(Curve::infinity());
  for (auto& [c, n] : L.parts)
    if (c.kind == CurveKind::Horizontal) k -= n * c.h.degree();
  if (k != 0 && abs(lc) != 1)
    throw DomainError("the section of " + L.str() + " has divisor differing from it along Hinf, which meets " + h.str());

  auto norm_of = [&](const Curve& c, long n) {
    if (c.kind == CurveKind::Horizontal) {
      Rat r = resultant(h.h, c.h).rat();
      for (int i = 0; i < c.h.degree(); ++i) r /= Rat(lc);
      return rat_pow(r, n * nM);
    }
    if (c.kind == CurveKind::Vertical) return rat_pow(Rat(c.p), n * h.h.degree() * nM);
    return Rat(1);
  };
  Rat nu = 1;
  for (auto& [c, n] : L.parts) nu *= norm_of(c, n);
  nu.canonicalize();
  R.norm_value = Scalar::from_rat(QQ(), nu);

  std::set<Int> places;
  for (auto& [p, x] : R.pairing_side.comps) places.insert(p);
  for (auto& p : primes_of(nu)) places.insert(p);
  R.norm_side = IdeleClass::diagonal(R.norm_value, {places.begin(), places.end()}, m);
  // Local comparison at p: the components of L meeting M over p, when each
  // passes through every point of M over p, account for the whole p-part.
  std::vector<Int> checked;
  IdeleClass local(m);
  for (auto& p : places) {
    auto pts = points_over(h, p);
    Rat nup = 1;
    bool ok = true;
    for (auto& [c, n] : L.parts) {
      long on = std::count_if(pts.begin(), pts.end(), [&](const ClosedPoint& x) { return lies_on(x, c); });
      if (on == 0) continue;
      if (on != static_cast<long>(pts.size())) ok = false;
      nup *= norm_of(c, n);
    }
    if (!ok) continue;
    checked.push_back(p);
    local.multiply(p, padic_of(nup, p, m));
  }
  R.unit_checked = checked;
  R.local_norms = local;
  R.passed = idele_agree(R.pairing_side, R.norm_side, {}, m) && idele_agree(R.pairing_side, local, checked, m);
  return R;
}

// ---------------------------------------------------------------------------
// Riemann-Roch

std::string RRReport::str() const {
  std::ostringstream os;
  os << "rhs: " << rhs.str() << " (" << rhs_membership.detail << ")\n";
  os << "lhs: H(L) = " << lhs_L.h0.str() << " / " << lhs_L.h1.str() << ", H(O) = " << lhs_O.h0.str() << " / "
     << lhs_O.h1.str() << "\nverdict: " << (passed ? "pass" : "FAIL");
  return os.str();
}

RRReport rr_check(const DivisorLB& L, int m, long move) {
  RRReport R;
  R.precision = m;
  long d = L.degree();
  auto line_at = [](long a) { return curve_h(Poly(ZZ(), {Scalar::from_long(ZZ(), -a), Scalar::one(ZZ())})); };
  long c = move;
  while (L.multiplicity(line_at(c)) != 0) ++c;
  DivisorLB Lm = DivisorLB::of(line_at(c), d);
  DivisorLB omega_inv = DivisorLB::of(Curve::infinity(), 2);
  if (L.multiplicity(Curve::infinity()) != 0) {
    long c2 = c + 1;
    while (L.multiplicity(line_at(c2)) != 0) ++c2;
    omega_inv = DivisorLB::of(line_at(c2), 2);
  }
  R.rhs = pushdown(chern_pair(L, Lm), m) * pushdown(chern_pair(L, omega_inv), m);
  R.rhs_membership = class_membership(R.rhs);
  R.lhs_L = cech_cohomology(HorrocksBundle::line(ZZ(), static_cast<int>(d)));
  R.lhs_O = cech_cohomology(HorrocksBundle::line(ZZ(), 0));
  R.lhs_trivial = R.lhs_L.h0.torsion.empty() && R.lhs_L.h1.torsion.empty() && R.lhs_O.h0.torsion.empty() &&
                  R.lhs_O.h1.torsion.empty();
  R.passed = R.lhs_trivial && R.rhs_membership.passed;
  return R;
}

// ---------------------------------------------------------------------------
// First Chern ideles

RatFun Codim1Idele::component(const Curve& c) const {
  RatFun r = everywhere;
  if (c.kind != CurveKind::Infinity) r = r * finite_chart;
  auto it = local.find(c);
  if (it != local.end()) r = r * it->second;
  return r;
}

std::map<Curve, long> Codim1Idele::divisor() const {
  std::set<Curve> cand{Curve::infinity()};
  auto collect = [&](const RatFun& f) {
    for (auto& [fi, e] : f.factors()) cand.insert(curve_h(fi));
    for (auto& p : primes_of(f.const_part().rat())) cand.insert(Curve::vertical(p));
  };
  collect(everywhere);
  collect(finite_chart);
  for (auto& [c, f] : local) {
    cand.insert(c);
    collect(f);
  }
  std::map<Curve, long> D;
  for (auto& c : cand) {
    long v = valuation_at(c, component(c));
    if (v != 0) D[c] = v;
  }
  return D;
}

std::string Codim1Idele::str() const {
  std::ostringstream os;
  os << "everywhere " << everywhere.str() << ", finite chart " << finite_chart.str();
  for (auto& [c, f] : local) os << ", at " << c.str() << " " << f.str();
  os << "; divisor:";
  auto D = divisor();
  if (D.empty()) os << " 0";
  for (auto& [c, n] : D) os << " " << n << "*" << c.str();
  return os.str();
}

Codim1Idele c1_idele(const HorrocksBundle& B, const BasisChoice& bases) {
  if (function_base(B.base) != ZZ()) throw DomainError("first Chern ideles are computed over Z or Q");
  Codim1Idele x;
  x.finite_chart = RatFun::from_laurent(ZZ(), B.ginv.det_expand());
  x.everywhere = RatFun::from_int(ZZ(), 1);
  if (bases.generic) {
    if (bases.generic->rows() != B.rank) throw DomainError("generic basis change has the wrong size");
    Laurent d = bases.generic->det_expand();
    if (d.is_zero()) throw NotInvertible("generic basis change is singular");
    x.everywhere = RatFun::from_laurent(ZZ(), d);
  }
  for (auto& [c, U] : bases.local) {
    if (U.rows() != B.rank) throw DomainError("local basis change has the wrong size");
    Laurent d0 = U.det_expand();
    if (d0.is_zero()) throw NotAUnit("local basis change at " + c.str() + " is singular");
    RatFun d = RatFun::from_laurent(ZZ(), d0);
    if (valuation_at(c, d) != 0) throw NotAUnit("local basis change is not invertible at " + c.str());
    auto it = x.local.find(c);
    if (it == x.local.end())
      x.local.emplace(c, d);
    else
      it->second = it->second * d;
  }
  return x;
}

PrincipalReport same_c1_class(const Codim1Idele& x, const Codim1Idele& y) {
  Codim1Idele q;
  q.everywhere = x.everywhere / y.everywhere;
  q.finite_chart = x.finite_chart / y.finite_chart;
  q.local = x.local;
  for (auto& [c, f] : y.local) {
    auto it = q.local.find(c);
    if (it == q.local.end())
      q.local.emplace(c, f.inv());
    else
      it->second = it->second / f;
  }
  auto D = q.divisor();
  PrincipalReport R;
  long deg = 0;
  RatFun cert = RatFun::from_int(ZZ(), 1);
  for (auto& [c, n] : D) {
    if (c.kind == CurveKind::Horizontal) deg += n * c.h.degree();
    if (c.kind == CurveKind::Infinity) deg += n;
    if (c.kind != CurveKind::Infinity) cert = cert * c.equation().pow(n);
  }
  R.certificate = cert;
  if (deg != 0) {
    R.detail = "quotient divisor has horizontal degree " + std::to_string(deg);
    return R;
  }
  // the certificate's divisor must reproduce the quotient divisor exactly
  std::set<Curve> cand{Curve::infinity()};
  for (auto& [c, n] : D) cand.insert(c);
  for (auto& [fi, e] : cert.factors()) cand.insert(curve_h(fi));
  for (auto& p : primes_of(cert.const_part().rat())) cand.insert(Curve::vertical(p));
  for (auto& c : cand) {
    long want = D.count(c) ? D.at(c) : 0;
    if (valuation_at(c, cert) != want) {
      R.detail = "certificate " + cert.str() + " has the wrong order along " + c.str();
      return R;
    }
  }
  R.passed = true;
  R.detail = "quotient is " + cert.str() + " times a unit at every codimension-one point";
  return R;
}

}  // namespace adelix
