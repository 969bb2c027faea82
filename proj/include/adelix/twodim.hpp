#pragma once

#include <string>

#include "adelix/laurent.hpp"

namespace adelix {

// Element of the two-dimensional local field F{{t}}, F = Q_q unramified
// over Q_p, stored as p^M * s with s in A((t)), A = W_r(F_q) = Galois(p, r).
// The reduction of s mod p is nonzero, so M is the p-adic valuation. All
// coefficients are known modulo p^{M+r}; coefficients below the stored
// window are implicitly divisible by p^{M+r}.
class TwoDim {
 public:
  TwoDim() = default;
  TwoDim(RingPtr field, int M, Laurent s);

  // From a Laurent series with coefficients in the p-adic field (or Z, Q).
  static TwoDim from_laurent(RingPtr field, const Laurent& x);
  static TwoDim from_scalar(const Scalar& a, int tprec = kInfPrec);
  static TwoDim t(RingPtr field, int e = 1);

  RingPtr field() const { return F_; }
  int pval() const { return M_; }             // p-adic valuation
  int tval() const { return s_.valuation(); }  // valuation of the residue series
  int relprec() const { return s_.ring()->m; }
  int tprec() const { return s_.prec(); }
  const Laurent& unit_series() const { return s_; }

  TwoDim operator*(const TwoDim& b) const;
  TwoDim operator+(const TwoDim& b) const;
  TwoDim operator-() const;
  TwoDim operator-(const TwoDim& b) const { return *this + (-b); }
  TwoDim inv() const;
  TwoDim pow(long e) const;
  // Reduce the relative p-adic precision to n.
  TwoDim with_relprec(int n) const;

  // Coefficientwise p-adic form.
  Laurent to_laurent() const;
  std::string str() const { return to_laurent().str(); }

  bool operator==(const TwoDim& b) const { return F_ == b.F_ && M_ == b.M_ && s_ == b.s_; }

 private:
  RingPtr F_ = nullptr;
  int M_ = 0;
  Laurent s_;
};

TwoDim parse_twodim(RingPtr field, const std::string& text);

}  // namespace adelix
