#pragma once

#include <gmpxx.h>

#include <climits>
#include <string>
#include <vector>

#include "adelix/errors.hpp"

namespace adelix {

using Int = mpz_class;
using Rat = mpq_class;

// Absolute precision used for exact zeros.
inline constexpr int kInfPrec = 1 << 28;

enum class RingKind {
  Integers,   // Z
  Rationals,  // Q
  Galois,     // (Z/p^m)[x]/(phi), phi monic and irreducible mod p; F_q when m = 1
  PAdic,      // Q_q = Frac W(F_q), capped relative precision m
  FpPoly,     // F_p[s]
};

// Coefficient ring context. Instances are interned and live for the whole
// process, so a raw pointer identifies a ring.
struct Ring {
  RingKind kind;
  Int p;                     // residue characteristic, 0 for Z and Q
  int m = 0;                 // Galois: exponent of p; PAdic: precision cap
  Int pm;                    // p^m
  std::vector<Int> modulus;  // monic, lowest degree first; {0,1} for degree 1
  std::string name;

  int degree() const { return static_cast<int>(modulus.size()) - 1; }
  bool is_field() const;
  bool is_euclidean() const;  // Z, F_p[s] and fields
};
using RingPtr = const Ring*;

RingPtr ring_integers();
RingPtr ring_rationals();
RingPtr ring_galois(const Int& p, int m, std::vector<Int> modulus = {});
RingPtr ring_prime_field(const Int& p);
RingPtr ring_padic(const Int& p, int m, std::vector<Int> modulus = {});
RingPtr ring_fp_poly(const Int& p);
// Same kind and modulus with a different m.
RingPtr ring_with_precision(RingPtr r, int m);
// F_q for Galois and PAdic rings.
RingPtr ring_residue_field(RingPtr r);
// W_m(F_q) = Z_q / p^m for a PAdic ring.
RingPtr ring_integers_mod(RingPtr padic, int m);
// The PAdic field whose integers reduce to the given Galois ring.
RingPtr ring_padic_of(RingPtr galois, int m);

bool is_probable_prime(const Int& p);
int pvaluation(const Int& n, const Int& p);  // n != 0
Int ipow(const Int& b, long e);

class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(RingPtr r);
  static Scalar one(RingPtr r);
  static Scalar from_int(RingPtr r, const Int& n);
  static Scalar from_long(RingPtr r, long n) { return from_int(r, Int(n)); }
  static Scalar from_rat(RingPtr r, const Rat& q);
  // Galois / FpPoly element from raw coefficients (reduced on entry).
  static Scalar from_coeffs(RingPtr r, std::vector<Int> c);
  // PAdic p^v * unit with relative precision rel.
  static Scalar padic(RingPtr r, int v, std::vector<Int> unit, int rel);
  static Scalar padic_zero(RingPtr r, int absprec);
  // The generator x of an extension ring.
  static Scalar generator(RingPtr r);

  RingPtr ring() const { return r_; }
  bool valid() const { return r_ != nullptr; }

  bool is_zero() const;
  bool is_unit() const;
  bool is_one() const;

  // p-adic order: PAdic valuation, order of nilpotency for Galois.
  int valuation() const;
  // Valuation at p for Integers and Rationals.
  int pval(const Int& p) const;
  int relprec() const { return rel_; }
  int absprec() const;

  const Rat& rat() const { return q_; }
  Int integer() const;
  const std::vector<Int>& coeffs() const { return c_; }
  int degree() const;  // FpPoly degree, -1 for zero

  Scalar operator+(const Scalar& b) const;
  Scalar operator-(const Scalar& b) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& b) const;
  Scalar operator/(const Scalar& b) const { return *this * b.inv(); }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar inv() const;
  Scalar pow(long e) const;

  // Euclidean division for Integers, FpPoly and fields (remainder 0).
  // For Galois local rings: exact quotient when v(b) <= v(a).
  void divmod(const Scalar& b, Scalar& q, Scalar& rem) const;
  // Euclidean size used for pivoting: |n| for Z, degree for F_p[s],
  // valuation for local rings, 0 for nonzero field elements.
  long norm_size() const;

  // Unit part of a PAdic element as a Galois element mod p^n.
  Scalar unit_part(int n) const;
  // Reduce into another ring of the same family (lower precision,
  // Galois -> PAdic, PAdic -> Galois for integral elements, Z -> anything).
  Scalar convert(RingPtr target) const;
  // Galois ring element lifted to a higher precision via its representatives.
  Scalar lift(RingPtr target) const;

  bool operator==(const Scalar& b) const;
  bool operator!=(const Scalar& b) const { return !(*this == b); }
  // Agreement modulo p^n (absolute) for PAdic/Galois; equality otherwise.
  bool congruent(const Scalar& b, int n) const;

  std::string str() const;

 private:
  RingPtr r_ = nullptr;
  Rat q_;               // Integers, Rationals
  std::vector<Int> c_;  // Galois coefficients, PAdic unit, FpPoly coefficients
  int v_ = 0;           // PAdic valuation (absolute precision when zero)
  int rel_ = 0;         // PAdic relative precision, 0 for zero

  void trim();
  friend Scalar parse_scalar(RingPtr r, const std::string& s);
};

Scalar parse_scalar(RingPtr r, const std::string& s);

// Norm from the degree-k extension down to its prime subring
// (Galois -> Z/p^m, PAdic -> Q_p); determinant of multiplication.
Scalar norm_to_prime(const Scalar& a);

}  // namespace adelix
