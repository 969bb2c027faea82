#include "adelix/laurent.hpp"

#include <algorithm>

namespace adelix {

namespace {

int clamp_prec(long x) { return x >= kInfPrec ? kInfPrec : static_cast<int>(x); }

long add_long(int a, int b) {
  if (a >= kInfPrec || b >= kInfPrec) return kInfPrec;
  return static_cast<long>(a) + b;
}

}  // namespace

Laurent::Laurent(RingPtr r, int lo, std::vector<Scalar> c, int prec) : r_(r), lo_(lo), c_(std::move(c)), prec_(prec) {
  normalize();
}

void Laurent::normalize() {
  if (prec_ < kInfPrec) {
    long keep = static_cast<long>(prec_) - lo_;
    if (keep < 0) keep = 0;
    if (static_cast<long>(c_.size()) > keep) c_.resize(keep);
  }
  size_t first = 0;
  while (first < c_.size() && c_[first].is_zero()) ++first;
  if (first == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  if (first > 0) {
    c_.erase(c_.begin(), c_.begin() + first);
    lo_ += static_cast<int>(first);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Laurent Laurent::constant(const Scalar& c, int prec) { return Laurent(c.ring(), 0, {c}, prec); }

Laurent Laurent::monomial(const Scalar& c, int e, int prec) { return Laurent(c.ring(), e, {c}, prec); }

Laurent Laurent::from_poly(const Poly& p, int shift) { return Laurent(p.ring(), shift, p.coeffs()); }

Laurent Laurent::from_ints(RingPtr r, int lo, const std::vector<long>& c, int prec) {
  std::vector<Scalar> v;
  for (long x : c) v.push_back(Scalar::from_long(r, x));
  return Laurent(r, lo, std::move(v), prec);
}

Scalar Laurent::coeff(int e) const {
  if (e >= prec_) throw PrecisionExhausted("coefficient of t^" + std::to_string(e) + " beyond O(t^" + std::to_string(prec_) + ")");
  if (c_.empty() || e < lo_ || e > hi()) return Scalar::zero(r_);
  return c_[e - lo_];
}

bool Laurent::is_one() const {
  return c_.size() == 1 && lo_ == 0 && c_[0].is_one();
}

int Laurent::valuation() const {
  bool local = r_->kind == RingKind::Galois && r_->m > 1;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!local && !c_[i].is_zero()) return lo_ + static_cast<int>(i);
    if (local && c_[i].is_unit()) return lo_ + static_cast<int>(i);
  }
  if (exact() && c_.empty()) throw DomainError("valuation of the zero series");
  throw PrecisionExhausted("no unit coefficient below O(t^" + std::to_string(prec_) + ")");
}

Scalar Laurent::leading() const { return coeff(valuation()); }

bool Laurent::is_unit() const {
  try {
    return leading().is_unit();
  } catch (const Error&) {
    return false;
  }
}

Laurent Laurent::operator+(const Laurent& b) const {
  if (r_ != b.r_) throw DomainError("series ring mismatch: " + r_->name + " vs " + b.r_->name);
  int prec = std::min(prec_, b.prec_);
  if (c_.empty() && b.c_.empty()) return Laurent(r_, prec);
  int lo = c_.empty() ? b.lo_ : (b.c_.empty() ? lo_ : std::min(lo_, b.lo_));
  int h = std::max(c_.empty() ? lo : hi(), b.c_.empty() ? lo : b.hi());
  if (prec < kInfPrec) h = std::min(h, prec - 1);
  if (h < lo) return Laurent(r_, prec);
  std::vector<Scalar> v(h - lo + 1, Scalar::zero(r_));
  for (size_t i = 0; i < c_.size(); ++i) {
    int e = lo_ + static_cast<int>(i);
    if (e <= h) v[e - lo] += c_[i];
  }
  for (size_t i = 0; i < b.c_.size(); ++i) {
    int e = b.lo_ + static_cast<int>(i);
    if (e <= h) v[e - lo] += b.c_[i];
  }
  return Laurent(r_, lo, std::move(v), prec);
}

Laurent Laurent::operator-() const {
  std::vector<Scalar> v;
  for (auto& x : c_) v.push_back(-x);
  return Laurent(r_, lo_, std::move(v), prec_);
}

Laurent Laurent::operator-(const Laurent& b) const { return *this + (-b); }

Laurent Laurent::operator*(const Laurent& b) const {
  if (r_ != b.r_) throw DomainError("series ring mismatch: " + r_->name + " vs " + b.r_->name);
  // A zero known to O(t^p) contributes as if its lowest term were at p.
  int la = c_.empty() ? prec_ : lo_;
  int lb = b.c_.empty() ? b.prec_ : b.lo_;
  int prec = clamp_prec(std::min(add_long(prec_, lb), add_long(b.prec_, la)));
  if (c_.empty() || b.c_.empty()) return Laurent(r_, prec);
  int lo = lo_ + b.lo_;
  int h = hi() + b.hi();
  if (prec < kInfPrec) h = std::min(h, prec - 1);
  if (h < lo) return Laurent(r_, prec);
  std::vector<Scalar> v(h - lo + 1, Scalar::zero(r_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    int ei = lo_ + static_cast<int>(i);
    for (size_t j = 0; j < b.c_.size(); ++j) {
      int e = ei + b.lo_ + static_cast<int>(j);
      if (e > h) break;
      v[e - lo] += c_[i] * b.c_[j];
    }
  }
  return Laurent(r_, lo, std::move(v), prec);
}

Laurent Laurent::operator*(const Scalar& s) const {
  std::vector<Scalar> v;
  for (auto& x : c_) v.push_back(x * s);
  return Laurent(r_, lo_, std::move(v), prec_);
}

Laurent Laurent::inv(int rel) const {
  if (c_.empty()) throw NotAUnit("inverse of a zero series");
  int w;
  try {
    w = valuation();
  } catch (const PrecisionExhausted&) {
    throw NotAUnit("series has no unit coefficient: " + str());
  }
  Scalar c = coeff(w);
  if (!c.is_unit()) throw NotAUnit("leading coefficient " + c.str() + " is not a unit");
  Scalar ci = c.inv();
  Laurent r = shift(-w) * ci;
  if (c_.size() == 1) return monomial(ci, -w, exact() ? kInfPrec : prec_ - 2 * w);
  // r = n + P with n nilpotent (negative exponents) and P = 1 + O(t).
  int cap = r.exact() ? rel : r.prec_;
  if (cap < 1) throw PrecisionExhausted("no precision left to invert " + str());
  Laurent P = r.part(0, r.exact() ? kInfPrec : r.prec_);
  if (!r.exact()) P = Laurent(r_, P.lo_, P.c_, r.prec_);
  // power-series inverse of P to O(t^cap)
  std::vector<Scalar> b(cap, Scalar::zero(r_));
  b[0] = Scalar::one(r_);
  for (int k = 1; k < cap; ++k) {
    Scalar acc = Scalar::zero(r_);
    for (int j = 1; j <= k && j <= P.hi(); ++j) acc += P.coeff(j) * b[k - j];
    b[k] = -acc;
  }
  Laurent Pinv(r_, 0, std::move(b), cap);
  Laurent result = Pinv;
  if (r.lo_ < 0) {
    Laurent n = r.part(r.lo_, 0);
    Laurent N = n * Pinv;
    Laurent term = Laurent::constant(Scalar::one(r_), Pinv.prec_);
    Laurent S = term;
    for (int k = 1; k < 4 * std::max(r_->m, 1) + 64; ++k) {
      term = -(term * N);
      if (term.is_zero()) break;
      S += term;
    }
    if (!term.is_zero()) throw PrecisionExhausted("nilpotent part did not vanish");
    result = Pinv * S;
  }
  return result.shift(-w) * ci;
}

Laurent Laurent::pow(long e, int rel) const {
  if (e < 0) return inv(rel).pow(-e, rel);
  Laurent r = constant(Scalar::one(r_)), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Laurent Laurent::shift(int k) const {
  Laurent r = *this;
  if (!r.c_.empty()) r.lo_ += k;
  if (r.prec_ < kInfPrec) r.prec_ += k;
  return r;
}

Laurent Laurent::truncate(int prec) const {
  if (prec > prec_) throw PrecisionExhausted("truncate beyond known precision");
  return Laurent(r_, lo_, c_, prec);
}

Laurent Laurent::part(int from, int to) const {
  std::vector<Scalar> v;
  int start = std::max(from, lo_);
  int end = std::min(to, c_.empty() ? start : hi() + 1);
  for (int e = start; e < end; ++e) v.push_back(c_[e - lo_]);
  return Laurent(r_, start, std::move(v));
}

Laurent Laurent::convert(RingPtr target) const {
  std::vector<Scalar> v;
  for (auto& x : c_) v.push_back(x.convert(target));
  return Laurent(target, lo_, std::move(v), prec_);
}

Laurent Laurent::lift(RingPtr target) const {
  std::vector<Scalar> v;
  for (auto& x : c_) v.push_back(x.lift(target));
  return Laurent(target, lo_, std::move(v), prec_);
}

Laurent Laurent::invert_variable() const {
  if (!exact()) throw PrecisionExhausted("t -> 1/t on a truncated series");
  if (c_.empty()) return *this;
  std::vector<Scalar> v(c_.rbegin(), c_.rend());
  return Laurent(r_, -hi(), std::move(v));
}

Scalar Laurent::eval(const Scalar& x) const {
  if (!exact()) throw PrecisionExhausted("evaluating a truncated series");
  Scalar acc = Scalar::zero(x.ring());
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) acc = acc * x + c_[i].convert(x.ring());
  return acc * x.pow(lo_);
}

bool Laurent::operator==(const Laurent& b) const {
  return r_ == b.r_ && prec_ == b.prec_ && lo_ == b.lo_ && c_ == b.c_;
}

bool Laurent::agrees(const Laurent& b, int n) const {
  if (n > prec_ || n > b.prec_) throw PrecisionExhausted("comparison beyond known precision");
  Laurent d = *this - b;
  return d.c_.empty() || d.lo_ >= n;
}

std::string Laurent::str() const {
  std::string s = "{";
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) s += ",";
    first = false;
    s += std::to_string(lo_ + static_cast<int>(i)) + ":" + c_[i].str();
  }
  s += "}";
  if (!exact()) s += "+O(t^" + std::to_string(prec_) + ")";
  return s;
}

Laurent eval_poly(const Poly& f, const Laurent& x) {
  Laurent acc(x.ring());
  for (int i = f.degree(); i >= 0; --i) acc = acc * x + Laurent::constant(f.coeff(i).convert(x.ring()));
  return acc;
}

}  // namespace adelix
