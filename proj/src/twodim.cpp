#include "adelix/twodim.hpp"

#include <algorithm>

namespace adelix {

namespace {

// Lowest p-adic valuation among the stored coefficients, or -1 when all vanish.
int min_coeff_val(const Laurent& s) {
  int best = -1;
  for (auto& c : s.coeffs()) {
    if (c.is_zero()) continue;
    int v = c.valuation();
    if (best < 0 || v < best) best = v;
  }
  return best;
}

// Divide every coefficient by p^w and drop to precision r - w.
Laurent divide_p(const Laurent& s, int w) {
  RingPtr A = s.ring();
  RingPtr B = ring_galois(A->p, A->m - w, A->modulus);
  Int pw = ipow(A->p, w);
  std::vector<Scalar> v;
  for (auto& c : s.coeffs()) {
    std::vector<Int> cc = c.coeffs();
    for (auto& x : cc) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pw.get_mpz_t());
    v.push_back(Scalar::from_coeffs(B, cc));
  }
  return Laurent(B, s.lo(), std::move(v), s.prec());
}

}  // namespace

TwoDim::TwoDim(RingPtr field, int M, Laurent s) : F_(field), M_(M), s_(std::move(s)) {
  if (F_->kind != RingKind::PAdic) throw DomainError("F{{t}} needs a p-adic coefficient field");
  int w = min_coeff_val(s_);
  if (w < 0) throw PrecisionExhausted("element of F{{t}} indistinguishable from zero");
  if (w > 0) {
    s_ = divide_p(s_, w);
    M_ += w;
  }
}

TwoDim TwoDim::from_laurent(RingPtr field, const Laurent& x) {
  RingPtr src = x.ring();
  if (src != field) {
    std::vector<Scalar> v;
    for (auto& c : x.coeffs()) v.push_back(c.convert(field));
    return from_laurent(field, Laurent(field, x.lo(), v, x.prec()));
  }
  bool any = false;
  int M = 0, A = kInfPrec;
  for (auto& c : x.coeffs()) {
    if (c.is_zero()) {
      A = std::min(A, c.absprec());
      continue;
    }
    M = any ? std::min(M, c.valuation()) : c.valuation();
    any = true;
    A = std::min(A, c.absprec());
  }
  if (!any) throw PrecisionExhausted("element of F{{t}} indistinguishable from zero");
  int r = std::min(A - M, field->m);
  if (r <= 0) throw PrecisionExhausted("no relative p-adic precision left");
  RingPtr W = ring_galois(field->p, r, field->modulus);
  std::vector<Scalar> v;
  for (int e = x.lo(); e <= x.hi(); ++e) {
    Scalar c = x.coeff(e);
    if (c.is_zero()) {
      v.push_back(Scalar::zero(W));
      continue;
    }
    // c / p^M, integral, reduced mod p^r
    Scalar q = c * Scalar::padic(field, -M, {Int(1)}, field->m);
    v.push_back(q.convert(W));
  }
  return TwoDim(field, M, Laurent(W, x.lo(), std::move(v), x.prec()));
}

TwoDim TwoDim::from_scalar(const Scalar& a, int tprec) {
  return from_laurent(a.ring(), Laurent::constant(a, tprec));
}

TwoDim TwoDim::t(RingPtr field, int e) {
  RingPtr W = ring_galois(field->p, field->m, field->modulus);
  return TwoDim(field, 0, Laurent::t(W, e));
}

TwoDim TwoDim::with_relprec(int n) const {
  RingPtr A = s_.ring();
  if (n >= A->m) return *this;
  return TwoDim(F_, M_, s_.convert(ring_galois(A->p, n, A->modulus)));
}

TwoDim TwoDim::operator*(const TwoDim& b) const {
  int r = std::min(relprec(), b.relprec());
  TwoDim x = with_relprec(r), y = b.with_relprec(r);
  return TwoDim(F_, M_ + b.M_, x.s_ * y.s_);
}

TwoDim TwoDim::operator+(const TwoDim& b) const {
  const TwoDim& lo = M_ <= b.M_ ? *this : b;
  const TwoDim& hi = M_ <= b.M_ ? b : *this;
  int d = hi.M_ - lo.M_;
  int r = std::min(lo.relprec(), hi.relprec() + d);
  RingPtr W = ring_galois(F_->p, r, F_->modulus);
  Laurent a = lo.s_.convert(W);
  RingPtr up = ring_galois(F_->p, hi.relprec() + d, F_->modulus);
  Laurent scaled = hi.s_.lift(up) * Scalar::from_int(up, ipow(F_->p, d));
  Laurent sum = a + scaled.convert(W);
  return TwoDim(F_, lo.M_, sum);
}

TwoDim TwoDim::operator-() const { return TwoDim(F_, M_, -s_); }

TwoDim TwoDim::inv() const { return TwoDim(F_, -M_, s_.inv()); }

TwoDim TwoDim::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  TwoDim r = from_scalar(Scalar::one(F_)), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Laurent TwoDim::to_laurent() const {
  int r = relprec();
  std::vector<Scalar> v;
  for (int e = s_.lo(); e <= s_.hi(); ++e) {
    Scalar c = s_.coeff(e);
    if (c.is_zero()) {
      v.push_back(Scalar::padic_zero(F_, M_ + r));
      continue;
    }
    v.push_back(Scalar::padic(F_, M_, c.coeffs(), r));
  }
  return Laurent(F_, s_.lo(), std::move(v), s_.prec());
}

}  // namespace adelix
