#pragma once

#include <string>
#include <vector>

#include "adelix/poly.hpp"
#include "adelix/ring.hpp"

namespace adelix {

// Relative t-adic precision used when inverting an exact non-monomial series.
inline constexpr int kDefaultSeriesPrec = 24;

// Truncated Laurent series sum_{lo <= e < prec} c_e t^e over a coefficient
// ring. prec == kInfPrec marks an exact Laurent polynomial.
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(RingPtr r, int prec = kInfPrec) : r_(r), lo_(0), prec_(prec) {}
  Laurent(RingPtr r, int lo, std::vector<Scalar> c, int prec = kInfPrec);

  static Laurent constant(const Scalar& c, int prec = kInfPrec);
  static Laurent monomial(const Scalar& c, int e, int prec = kInfPrec);
  static Laurent t(RingPtr r, int e = 1) { return monomial(Scalar::one(r), e); }
  static Laurent from_poly(const Poly& p, int shift = 0);
  static Laurent from_ints(RingPtr r, int lo, const std::vector<long>& c, int prec = kInfPrec);

  RingPtr ring() const { return r_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }  // last stored exponent
  int prec() const { return prec_; }
  bool exact() const { return prec_ >= kInfPrec; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int e) const;
  // True when no nonzero coefficient is stored.
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;

  // t-adic valuation; over a local coefficient ring this is the exponent of
  // the first coefficient that is a unit (the valuation of the reduction).
  int valuation() const;
  // The coefficient at valuation().
  Scalar leading() const;
  bool is_unit() const;

  Laurent operator+(const Laurent& b) const;
  Laurent operator-(const Laurent& b) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& b) const;
  Laurent operator*(const Scalar& s) const;
  Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
  Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
  Laurent& operator*=(const Laurent& b) { return *this = *this * b; }
  Laurent inv(int rel_prec = kDefaultSeriesPrec) const;
  Laurent operator/(const Laurent& b) const { return *this * b.inv(); }
  Laurent pow(long e, int rel_prec = kDefaultSeriesPrec) const;

  Laurent shift(int k) const;          // multiply by t^k
  Laurent truncate(int prec) const;    // forget exponents >= prec
  Laurent part(int from, int to) const;  // exponents in [from, to), exact
  Laurent convert(RingPtr target) const;
  Laurent lift(RingPtr target) const;
  // Substitute t -> 1/t (exact Laurent polynomials only).
  Laurent invert_variable() const;
  // Evaluate at a scalar (exact Laurent polynomials only).
  Scalar eval(const Scalar& x) const;

  // Equality of stored data and precision.
  bool operator==(const Laurent& b) const;
  bool operator!=(const Laurent& b) const { return !(*this == b); }
  // Agreement of coefficients below exponent n (absolute).
  bool agrees(const Laurent& b, int n) const;

  std::string str() const;

 private:
  RingPtr r_ = nullptr;
  int lo_ = 0;
  std::vector<Scalar> c_;
  int prec_ = kInfPrec;
  void normalize();
};

Laurent parse_laurent(RingPtr r, const std::string& s);

// Evaluate an integer-coefficient polynomial at a series.
Laurent eval_poly(const Poly& f, const Laurent& x);

}  // namespace adelix
