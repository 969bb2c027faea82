#include "adelix/ring.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "detail_fp.hpp"

namespace adelix {

using detail::modn;

bool is_probable_prime(const Int& p) { return p > 1 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

int pvaluation(const Int& n, const Int& p) {
  if (n == 0) throw DomainError("valuation of zero");
  Int t = n;
  int v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

Int ipow(const Int& b, long e) {
  if (e < 0) throw DomainError("negative exponent");
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

bool Ring::is_field() const {
  return kind == RingKind::Rationals || kind == RingKind::PAdic || (kind == RingKind::Galois && m == 1);
}

bool Ring::is_euclidean() const {
  return is_field() || kind == RingKind::Integers || kind == RingKind::FpPoly;
}

namespace {

using Key = std::tuple<int, std::string, int, std::vector<std::string>>;

std::mutex g_mu;
std::map<Key, std::unique_ptr<Ring>>& registry() {
  static std::map<Key, std::unique_ptr<Ring>> r;
  return r;
}

std::string poly_name(const std::vector<Int>& f) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || f[i] != 1) os << f[i].get_str();
    if (i > 0) os << (f[i] != 1 ? "*x" : "x");
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

RingPtr intern(RingKind kind, const Int& p, int m, std::vector<Int> modulus) {
  std::vector<std::string> ms;
  for (auto& c : modulus) ms.push_back(c.get_str());
  Key key{static_cast<int>(kind), p.get_str(), m, ms};
  std::lock_guard<std::mutex> lock(g_mu);
  auto& reg = registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second.get();
  auto r = std::make_unique<Ring>();
  r->kind = kind;
  r->p = p;
  r->m = m;
  r->pm = (p == 0) ? Int(0) : ipow(p, m > 0 ? m : 0);
  r->modulus = std::move(modulus);
  std::string ext = r->degree() > 1 ? "[x]/(" + poly_name(r->modulus) + ")" : "";
  switch (kind) {
    case RingKind::Integers: r->name = "Z"; break;
    case RingKind::Rationals: r->name = "Q"; break;
    case RingKind::FpPoly: r->name = "F" + p.get_str() + "[s]"; break;
    case RingKind::Galois:
      r->name = (m == 1 ? "F" + p.get_str() : "Z/" + p.get_str() + "^" + std::to_string(m)) + ext;
      break;
    case RingKind::PAdic:
      r->name = "Q" + p.get_str() + ext + "(prec " + std::to_string(m) + ")";
      break;
  }
  RingPtr out = r.get();
  reg.emplace(key, std::move(r));
  return out;
}

std::vector<Int> check_modulus(const Int& p, std::vector<Int> f) {
  if (f.empty()) return {Int(0), Int(1)};
  while (f.size() > 1 && f.back() == 0) f.pop_back();
  if (f.size() < 2 || f.back() != 1) throw DomainError("extension modulus must be monic of degree >= 1");
  if (f.size() == 2) return {Int(0), Int(1)};
  for (auto& c : f) c = modn(c, p);
  if (!detail::fp_is_irreducible(f, p)) throw DomainError("extension modulus is not irreducible mod p");
  return f;
}

void check_prime(const Int& p) {
  if (!is_probable_prime(p)) throw DomainError("not a prime: " + p.get_str());
}

// Lowest p-power valuation over a coefficient vector, or -1 when all vanish.
int vec_val(const std::vector<Int>& c, const Int& p) {
  int best = -1;
  for (auto& x : c) {
    if (x == 0) continue;
    int v = pvaluation(x, p);
    if (best < 0 || v < best) best = v;
  }
  return best;
}

std::vector<Int> vec_divp(std::vector<Int> c, const Int& pw) {
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pw.get_mpz_t());
  return c;
}

std::vector<Int> vec_mod(std::vector<Int> c, const Int& N) {
  for (auto& x : c) x = modn(x, N);
  return c;
}

std::string vec_str(const std::vector<Int>& c) {
  if (c.size() == 1) return c[0].get_str();
  std::string s = "[";
  for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i].get_str();
  return s + "]";
}

int add_prec(int a, int b) {
  if (a >= kInfPrec || b >= kInfPrec) return kInfPrec;
  return static_cast<int>(std::min<long>(static_cast<long>(a) + b, kInfPrec));
}

void require_same(const Scalar& a, const Scalar& b) {
  if (a.ring() != b.ring())
    throw DomainError("ring mismatch: " + (a.ring() ? a.ring()->name : "?") + " vs " +
                      (b.ring() ? b.ring()->name : "?"));
}

}  // namespace

RingPtr ring_integers() { return intern(RingKind::Integers, 0, 0, {}); }
RingPtr ring_rationals() { return intern(RingKind::Rationals, 0, 0, {}); }

RingPtr ring_galois(const Int& p, int m, std::vector<Int> modulus) {
  check_prime(p);
  if (m < 1) throw DomainError("Galois ring needs m >= 1");
  return intern(RingKind::Galois, p, m, check_modulus(p, std::move(modulus)));
}

RingPtr ring_prime_field(const Int& p) { return ring_galois(p, 1); }

RingPtr ring_padic(const Int& p, int m, std::vector<Int> modulus) {
  check_prime(p);
  if (m < 1) throw DomainError("p-adic precision must be >= 1");
  return intern(RingKind::PAdic, p, m, check_modulus(p, std::move(modulus)));
}

RingPtr ring_fp_poly(const Int& p) {
  check_prime(p);
  return intern(RingKind::FpPoly, p, 1, {});
}

RingPtr ring_with_precision(RingPtr r, int m) {
  if (r->kind == RingKind::Galois) return ring_galois(r->p, m, r->modulus);
  if (r->kind == RingKind::PAdic) return ring_padic(r->p, m, r->modulus);
  return r;
}

RingPtr ring_residue_field(RingPtr r) {
  if (r->kind != RingKind::Galois && r->kind != RingKind::PAdic) throw DomainError("no residue field for " + r->name);
  return ring_galois(r->p, 1, r->modulus);
}

RingPtr ring_integers_mod(RingPtr padic, int m) { return ring_galois(padic->p, m, padic->modulus); }
RingPtr ring_padic_of(RingPtr galois, int m) { return ring_padic(galois->p, m, galois->modulus); }

// ---------------------------------------------------------------------------

void Scalar::trim() {
  if (r_->kind == RingKind::FpPoly)
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Scalar Scalar::zero(RingPtr r) {
  Scalar s;
  s.r_ = r;
  switch (r->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: s.q_ = 0; break;
    case RingKind::Galois: s.c_.assign(r->degree(), Int(0)); break;
    case RingKind::PAdic: s.v_ = kInfPrec; s.rel_ = 0; break;
    case RingKind::FpPoly: break;
  }
  return s;
}

Scalar Scalar::one(RingPtr r) { return from_int(r, 1); }

Scalar Scalar::from_int(RingPtr r, const Int& n) { return from_rat(r, Rat(n)); }

Scalar Scalar::from_rat(RingPtr r, const Rat& q0) {
  Rat q = q0;
  q.canonicalize();
  Scalar s = zero(r);
  switch (r->kind) {
    case RingKind::Integers:
      if (q.get_den() != 1) throw DomainError("not an integer: " + q.get_str());
      s.q_ = q;
      return s;
    case RingKind::Rationals:
      s.q_ = q;
      return s;
    case RingKind::Galois:
    case RingKind::FpPoly: {
      Int mod = r->kind == RingKind::Galois ? r->pm : r->p;
      if (mpz_divisible_p(q.get_den().get_mpz_t(), r->p.get_mpz_t()))
        throw NotAUnit("denominator divisible by p in " + r->name);
      Int di;
      mpz_invert(di.get_mpz_t(), q.get_den().get_mpz_t(), mod.get_mpz_t());
      Int c = modn(q.get_num() * di, mod);
      if (r->kind == RingKind::Galois) {
        s.c_[0] = c;
      } else {
        s.c_ = {c};
        s.trim();
      }
      return s;
    }
    case RingKind::PAdic: {
      if (q == 0) return s;
      int v = pvaluation(q.get_num(), r->p) - pvaluation(q.get_den(), r->p);
      Int num = q.get_num(), den = q.get_den();
      Int pw = ipow(r->p, std::abs(v));
      if (v > 0) mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), pw.get_mpz_t());
      if (v < 0) mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), pw.get_mpz_t());
      Int di;
      mpz_invert(di.get_mpz_t(), den.get_mpz_t(), r->pm.get_mpz_t());
      std::vector<Int> u(r->degree(), Int(0));
      u[0] = modn(num * di, r->pm);
      return padic(r, v, std::move(u), r->m);
    }
  }
  return s;
}

Scalar Scalar::from_coeffs(RingPtr r, std::vector<Int> c) {
  Scalar s = zero(r);
  if (r->kind == RingKind::Galois) {
    int k = r->degree();
    if (static_cast<int>(c.size()) > k) c = detail::poly_rem_monic(c, r->modulus, r->pm);
    c.resize(k, Int(0));
    s.c_ = vec_mod(std::move(c), r->pm);
  } else if (r->kind == RingKind::FpPoly) {
    s.c_ = vec_mod(std::move(c), r->p);
    s.trim();
  } else if (r->kind == RingKind::PAdic) {
    int k = r->degree();
    if (static_cast<int>(c.size()) > k) c = detail::poly_rem_monic(c, r->modulus, r->pm);
    c.resize(k, Int(0));
    return padic(r, 0, std::move(c), r->m);
  } else {
    if (c.size() > 1) throw DomainError("coefficient vector for " + r->name);
    return from_int(r, c.empty() ? Int(0) : c[0]);
  }
  return s;
}

Scalar Scalar::padic(RingPtr r, int v, std::vector<Int> unit, int rel) {
  if (r->kind != RingKind::PAdic) throw DomainError("padic() on " + r->name);
  rel = std::min(rel, r->m);
  Scalar s = zero(r);
  if (rel <= 0) {
    s.v_ = v + std::max(rel, 0);
    return s;
  }
  unit.resize(r->degree(), Int(0));
  unit = vec_mod(std::move(unit), ipow(r->p, rel));
  int w = vec_val(unit, r->p);
  if (w < 0) {
    s.v_ = add_prec(v, rel);
    return s;
  }
  if (w > 0) unit = vec_divp(std::move(unit), ipow(r->p, w));
  s.v_ = v + w;
  s.rel_ = rel - w;
  s.c_ = std::move(unit);
  return s;
}

Scalar Scalar::padic_zero(RingPtr r, int absprec) {
  Scalar s = zero(r);
  s.v_ = absprec;
  return s;
}

Scalar Scalar::generator(RingPtr r) {
  if (r->kind == RingKind::FpPoly) return from_coeffs(r, {Int(0), Int(1)});
  if (r->degree() < 2) throw DomainError("no generator for " + r->name);
  std::vector<Int> c(r->degree(), Int(0));
  c[1] = 1;
  return from_coeffs(r, c);
}

bool Scalar::is_zero() const {
  switch (r_->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: return q_ == 0;
    case RingKind::Galois: return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
    case RingKind::PAdic: return rel_ == 0;
    case RingKind::FpPoly: return c_.empty();
  }
  return false;
}

bool Scalar::is_unit() const {
  switch (r_->kind) {
    case RingKind::Integers: return q_ == 1 || q_ == -1;
    case RingKind::Rationals: return q_ != 0;
    case RingKind::Galois: return vec_val(c_, r_->p) == 0;
    case RingKind::PAdic: return rel_ > 0;
    case RingKind::FpPoly: return c_.size() == 1;
  }
  return false;
}

bool Scalar::is_one() const { return *this == one(r_); }

int Scalar::valuation() const {
  switch (r_->kind) {
    case RingKind::Galois: {
      int w = vec_val(c_, r_->p);
      return w < 0 ? r_->m : w;
    }
    case RingKind::PAdic:
      if (rel_ == 0) throw PrecisionExhausted("valuation of an indistinguishable-from-zero p-adic");
      return v_;
    default: throw DomainError("valuation() needs a p-adic or Galois ring; use pval");
  }
}

int Scalar::pval(const Int& p) const {
  if (r_->kind != RingKind::Integers && r_->kind != RingKind::Rationals) return valuation();
  if (q_ == 0) throw DomainError("valuation of zero");
  return pvaluation(q_.get_num(), p) - (q_.get_den() == 1 ? 0 : pvaluation(q_.get_den(), p));
}

int Scalar::absprec() const {
  if (r_->kind == RingKind::PAdic) return rel_ == 0 ? v_ : v_ + rel_;
  if (r_->kind == RingKind::Galois) return r_->m;
  return kInfPrec;
}

Int Scalar::integer() const {
  switch (r_->kind) {
    case RingKind::Integers: return q_.get_num();
    case RingKind::Rationals:
      if (q_.get_den() != 1) throw DomainError("not an integer");
      return q_.get_num();
    case RingKind::Galois:
      if (std::any_of(c_.begin() + 1, c_.end(), [](const Int& x) { return x != 0; }))
        throw DomainError("not in the prime subring");
      return c_[0];
    default: throw DomainError("integer() unsupported for " + r_->name);
  }
}

int Scalar::degree() const {
  if (r_->kind == RingKind::FpPoly) return static_cast<int>(c_.size()) - 1;
  return is_zero() ? -1 : 0;
}

Scalar Scalar::operator+(const Scalar& b) const {
  require_same(*this, b);
  Scalar s = zero(r_);
  switch (r_->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: s.q_ = q_ + b.q_; return s;
    case RingKind::Galois:
      for (size_t i = 0; i < c_.size(); ++i) s.c_[i] = modn(c_[i] + b.c_[i], r_->pm);
      return s;
    case RingKind::FpPoly: {
      s.c_.assign(std::max(c_.size(), b.c_.size()), Int(0));
      for (size_t i = 0; i < s.c_.size(); ++i) {
        Int x = (i < c_.size() ? c_[i] : Int(0)) + (i < b.c_.size() ? b.c_[i] : Int(0));
        s.c_[i] = modn(x, r_->p);
      }
      s.trim();
      return s;
    }
    case RingKind::PAdic: {
      int A = std::min(absprec(), b.absprec());
      if (rel_ == 0 && b.rel_ == 0) return padic_zero(r_, A);
      if (rel_ == 0) return padic(r_, b.v_, b.c_, A - b.v_);
      if (b.rel_ == 0) return padic(r_, v_, c_, A - v_);
      int vm = std::min(v_, b.v_);
      if (A - vm <= 0) return padic_zero(r_, A);
      Int N = ipow(r_->p, A - vm);
      std::vector<Int> u(c_.size());
      Int sa = ipow(r_->p, v_ - vm), sb = ipow(r_->p, b.v_ - vm);
      for (size_t i = 0; i < u.size(); ++i) u[i] = modn(c_[i] * sa + b.c_[i] * sb, N);
      return padic(r_, vm, std::move(u), A - vm);
    }
  }
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  switch (r_->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: s.q_ = -q_; break;
    case RingKind::Galois:
      for (auto& x : s.c_) x = modn(-x, r_->pm);
      break;
    case RingKind::FpPoly:
      for (auto& x : s.c_) x = modn(-x, r_->p);
      break;
    case RingKind::PAdic: {
      if (rel_ == 0) break;
      Int N = ipow(r_->p, rel_);
      for (auto& x : s.c_) x = modn(-x, N);
      break;
    }
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& b) const { return *this + (-b); }

Scalar Scalar::operator*(const Scalar& b) const {
  require_same(*this, b);
  Scalar s = zero(r_);
  switch (r_->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: s.q_ = q_ * b.q_; return s;
    case RingKind::Galois:
      if (c_.size() == 1) {
        s.c_[0] = modn(c_[0] * b.c_[0], r_->pm);
      } else {
        s.c_ = detail::mulmod(c_, b.c_, r_->modulus, r_->pm);
      }
      return s;
    case RingKind::FpPoly:
      s.c_ = detail::fp_mul(c_, b.c_, r_->p);
      s.trim();
      return s;
    case RingKind::PAdic: {
      // Zero times x: the zero's absolute precision shifts by v(x).
      if (rel_ == 0 || b.rel_ == 0) return padic_zero(r_, add_prec(v_, b.v_));
      int rel = std::min(rel_, b.rel_);
      Int N = ipow(r_->p, rel);
      std::vector<Int> u = c_.size() == 1 ? std::vector<Int>{modn(c_[0] * b.c_[0], N)}
                                          : detail::mulmod(c_, b.c_, r_->modulus, N);
      s.v_ = v_ + b.v_;
      s.rel_ = rel;
      s.c_ = std::move(u);
      return s;
    }
  }
  return s;
}

Scalar Scalar::inv() const {
  Scalar s = zero(r_);
  switch (r_->kind) {
    case RingKind::Integers:
      if (!is_unit()) throw NotAUnit(str() + " in Z");
      s.q_ = q_;
      return s;
    case RingKind::Rationals:
      if (q_ == 0) throw NotAUnit("0 in Q");
      s.q_ = 1 / q_;
      return s;
    case RingKind::Galois:
      if (!is_unit()) throw NotAUnit(str() + " in " + r_->name);
      s.c_ = detail::galois_inverse(c_, r_->modulus, r_->p, r_->m);
      return s;
    case RingKind::FpPoly: {
      if (c_.size() != 1) throw NotAUnit(str() + " in " + r_->name);
      Int i;
      mpz_invert(i.get_mpz_t(), c_[0].get_mpz_t(), r_->p.get_mpz_t());
      s.c_ = {i};
      return s;
    }
    case RingKind::PAdic:
      if (rel_ == 0) throw NotAUnit("p-adic zero to precision " + std::to_string(v_));
      s.v_ = -v_;
      s.rel_ = rel_;
      s.c_ = detail::galois_inverse(c_, r_->modulus, r_->p, rel_);
      return s;
  }
  return s;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar result = one(r_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

void Scalar::divmod(const Scalar& b, Scalar& q, Scalar& rem) const {
  require_same(*this, b);
  if (b.is_zero()) throw DomainError("division by zero");
  switch (r_->kind) {
    case RingKind::Integers: {
      Int qq, rr;
      mpz_fdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), q_.get_num_mpz_t(), b.q_.get_num_mpz_t());
      q = from_int(r_, qq);
      rem = from_int(r_, rr);
      return;
    }
    case RingKind::FpPoly: {
      auto [qq, rr] = detail::fp_divmod(c_, b.c_, r_->p);
      q = from_coeffs(r_, qq);
      rem = from_coeffs(r_, rr);
      return;
    }
    case RingKind::Galois: {
      int vb = b.valuation(), va = valuation();
      if (va < vb) {
        q = zero(r_);
        rem = *this;
        return;
      }
      Int pw = ipow(r_->p, vb);
      RingPtr low = ring_galois(r_->p, r_->m - vb, r_->modulus);
      Scalar ub = from_coeffs(low, vec_divp(b.c_, pw));
      Scalar ua = from_coeffs(low, vec_divp(c_, pw));
      Scalar qq = ua * ub.inv();
      q = from_coeffs(r_, qq.c_);
      rem = zero(r_);
      return;
    }
    default:
      q = *this * b.inv();
      rem = zero(r_);
  }
}

long Scalar::norm_size() const {
  if (is_zero()) return -1;
  switch (r_->kind) {
    case RingKind::Integers: {
      Int a = abs(q_.get_num());
      return a.fits_slong_p() ? a.get_si() : LONG_MAX;
    }
    case RingKind::FpPoly: return degree();
    case RingKind::Galois: return valuation();
    default: return 0;
  }
}

Scalar Scalar::unit_part(int n) const {
  if (r_->kind != RingKind::PAdic) throw DomainError("unit_part needs a p-adic");
  if (rel_ == 0) throw PrecisionExhausted("unit part of p-adic zero");
  if (n > rel_) throw PrecisionExhausted("unit known to " + std::to_string(rel_) + " digits, asked for " + std::to_string(n));
  return from_coeffs(ring_galois(r_->p, n, r_->modulus), c_);
}

Scalar Scalar::convert(RingPtr t) const {
  if (t == r_) return *this;
  RingKind sk = r_->kind, tk = t->kind;
  if (sk == RingKind::Integers || sk == RingKind::Rationals) return from_rat(t, q_);
  if (sk == RingKind::Galois && tk == RingKind::Galois && t->p == r_->p && t->modulus == r_->modulus) {
    if (t->m > r_->m) throw PrecisionExhausted("cannot raise precision of " + r_->name + " to " + t->name);
    return from_coeffs(t, c_);
  }
  if (sk == RingKind::Galois && tk == RingKind::PAdic && t->p == r_->p && t->modulus == r_->modulus)
    return padic(t, 0, c_, r_->m);
  if (sk == RingKind::PAdic && tk == RingKind::PAdic && t->p == r_->p && t->modulus == r_->modulus)
    return rel_ == 0 ? padic_zero(t, v_) : padic(t, v_, c_, rel_);
  if (sk == RingKind::PAdic && tk == RingKind::Galois && t->p == r_->p && t->modulus == r_->modulus) {
    if (rel_ == 0) {
      if (v_ < t->m) throw PrecisionExhausted("p-adic zero known only mod p^" + std::to_string(v_));
      return zero(t);
    }
    if (v_ < 0) throw NotAUnit("non-integral p-adic into " + t->name);
    if (v_ >= t->m) return zero(t);
    if (v_ + rel_ < t->m) throw PrecisionExhausted("p-adic known mod p^" + std::to_string(v_ + rel_) + ", need " + std::to_string(t->m));
    std::vector<Int> c = c_;
    Int pw = ipow(r_->p, v_);
    for (auto& x : c) x *= pw;
    return from_coeffs(t, c);
  }
  if (sk == RingKind::Galois && tk == RingKind::FpPoly && r_->m == 1 && r_->degree() == 1 && t->p == r_->p)
    return from_coeffs(t, c_);
  if (sk == RingKind::FpPoly && tk == RingKind::Galois && t->m == 1 && t->p == r_->p) {
    if (c_.size() > 1) throw DomainError("nonconstant polynomial into " + t->name);
    return from_coeffs(t, c_);
  }
  throw DomainError("no conversion from " + r_->name + " to " + t->name);
}

Scalar Scalar::lift(RingPtr t) const {
  if (r_->kind != RingKind::Galois || t->kind != RingKind::Galois || t->p != r_->p || t->modulus != r_->modulus)
    return convert(t);
  return from_coeffs(t, c_);
}

bool Scalar::operator==(const Scalar& b) const {
  if (r_ != b.r_) return false;
  switch (r_->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: return q_ == b.q_;
    case RingKind::PAdic:
      if (rel_ == 0 || b.rel_ == 0) return rel_ == b.rel_ && v_ == b.v_;
      return v_ == b.v_ && rel_ == b.rel_ && c_ == b.c_;
    default: return c_ == b.c_;
  }
}

bool Scalar::congruent(const Scalar& b, int n) const {
  require_same(*this, b);
  if (r_->kind == RingKind::Galois) {
    Int N = ipow(r_->p, std::min(n, r_->m));
    for (size_t i = 0; i < c_.size(); ++i)
      if (modn(c_[i] - b.c_[i], N) != 0) return false;
    return true;
  }
  if (r_->kind == RingKind::PAdic) {
    Scalar d = *this - b;
    if (d.absprec() < n) throw PrecisionExhausted("difference known mod p^" + std::to_string(d.absprec()));
    return d.rel_ == 0 || d.v_ >= n;
  }
  return *this == b;
}

std::string Scalar::str() const {
  switch (r_->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: return q_.get_str();
    case RingKind::Galois: return vec_str(c_);
    case RingKind::FpPoly: {
      std::string s = "[";
      for (size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + c_[i].get_str();
      return s + "]";
    }
    case RingKind::PAdic: {
      std::string P = r_->p.get_str();
      std::string tail = "O(" + P + "^" + std::to_string(absprec()) + ")";
      if (rel_ == 0) return v_ >= kInfPrec ? "0" : tail;
      std::string u = vec_str(c_);
      if (v_ != 0) u += "*" + P + "^" + std::to_string(v_);
      return u + "+" + tail;
    }
  }
  return "?";
}

Scalar parse_scalar(RingPtr r, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty scalar");
  auto parse_vec = [&](const std::string& t) {
    std::vector<Int> c;
    if (t.size() >= 2 && t.front() == '[' && t.back() == ']') {
      std::string body = t.substr(1, t.size() - 2);
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) {
        Int x;
        if (x.set_str(item, 10) != 0) throw ParseError("bad integer '" + item + "'");
        c.push_back(x);
      }
    } else {
      Int x;
      if (x.set_str(t, 10) != 0) throw ParseError("bad integer '" + t + "'");
      c.push_back(x);
    }
    return c;
  };
  try {
    if (r->kind == RingKind::PAdic) {
      if (s == "0") return Scalar::zero(r);
      std::string P = r->p.get_str();
      auto opos = s.find("O(" + P + "^");
      if (opos == std::string::npos) {
        Rat q(s);
        q.canonicalize();
        return Scalar::from_rat(r, q);
      }
      int A = std::stoi(s.substr(opos + 3 + P.size()));
      if (opos == 0) return Scalar::padic_zero(r, A);
      std::string head = s.substr(0, opos - 1);  // drop '+'
      int v = 0;
      auto star = head.find("*" + P + "^");
      if (star != std::string::npos) {
        v = std::stoi(head.substr(star + 2 + P.size()));
        head = head.substr(0, star);
      }
      return Scalar::padic(r, v, parse_vec(head), A - v);
    }
    if (r->kind == RingKind::Galois || r->kind == RingKind::FpPoly) {
      if (s.front() == '[') return Scalar::from_coeffs(r, parse_vec(s));
      Rat q(s);
      q.canonicalize();
      return Scalar::from_rat(r, q);
    }
    Rat q(s);
    q.canonicalize();
    return Scalar::from_rat(r, q);
  } catch (const std::invalid_argument&) {
    throw ParseError("cannot parse scalar '" + text + "' in " + r->name);
  }
}

Scalar norm_to_prime(const Scalar& a) {
  RingPtr r = a.ring();
  int k = r->degree();
  if (r->kind == RingKind::PAdic) {
    RingPtr base = ring_padic(r->p, r->m);
    if (a.is_zero()) return Scalar::padic_zero(base, a.absprec() >= kInfPrec ? kInfPrec : a.absprec());
    int rel = a.relprec();
    Scalar nu = norm_to_prime(a.unit_part(rel));
    return Scalar::padic(base, a.valuation() * k, nu.coeffs(), rel);
  }
  if (r->kind != RingKind::Galois) throw DomainError("norm needs a Galois or p-adic ring");
  RingPtr base = ring_galois(r->p, r->m);
  if (k == 1) return Scalar::from_coeffs(base, a.coeffs());
  // Multiplication matrix in the basis 1, x, ..., x^{k-1}.
  std::vector<std::vector<Scalar>> M(k, std::vector<Scalar>(k));
  Scalar xi = Scalar::one(r), x = Scalar::generator(r);
  for (int i = 0; i < k; ++i) {
    Scalar row = xi * a;
    for (int j = 0; j < k; ++j) M[i][j] = Scalar::from_int(base, row.coeffs()[j]);
    xi = xi * x;
  }
  Scalar det = Scalar::one(base);
  for (int c = 0; c < k; ++c) {
    int piv = -1;
    int best = r->m + 1;
    for (int i = c; i < k; ++i) {
      int v = M[i][c].valuation();
      if (v < best && !M[i][c].is_zero()) best = v, piv = i;
    }
    if (piv < 0) return Scalar::zero(base);
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = -det;
    }
    det = det * M[c][c];
    for (int i = c + 1; i < k; ++i) {
      if (M[i][c].is_zero()) continue;
      Scalar f, rem;
      M[i][c].divmod(M[c][c], f, rem);
      for (int j = c; j < k; ++j) M[i][j] -= f * M[c][j];
    }
  }
  return det;
}

}  // namespace adelix
