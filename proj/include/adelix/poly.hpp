#pragma once

#include <string>
#include <utility>
#include <vector>

#include "adelix/ring.hpp"

namespace adelix {

// Dense univariate polynomial over a coefficient ring, lowest degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr r) : r_(r) {}
  Poly(RingPtr r, std::vector<Scalar> c);
  static Poly from_ints(RingPtr r, const std::vector<long>& c);
  static Poly from_bigints(RingPtr r, const std::vector<Int>& c);
  static Poly constant(const Scalar& c);
  static Poly monomial(const Scalar& c, int deg);
  static Poly x(RingPtr r) { return monomial(Scalar::one(r), 1); }

  RingPtr ring() const { return r_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int i) const;
  Scalar lead() const;
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  Poly operator+(const Poly& b) const;
  Poly operator-(const Poly& b) const;
  Poly operator-() const;
  Poly operator*(const Poly& b) const;
  Poly operator*(const Scalar& s) const;
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  bool operator==(const Poly& b) const;
  bool operator!=(const Poly& b) const { return !(*this == b); }

  // Division by a polynomial whose leading coefficient is a unit.
  std::pair<Poly, Poly> divmod(const Poly& b) const;
  Poly operator%(const Poly& b) const { return divmod(b).second; }
  Poly operator/(const Poly& b) const { return divmod(b).first; }
  // Exact division over Z (or any domain); throws if not exact.
  Poly divexact(const Poly& b) const;

  Poly derivative() const;
  Poly monic() const;
  Poly shift(int k) const;      // multiply by x^k, k >= 0
  Poly reverse(int n) const;    // x^n p(1/x)
  Poly pow(int e) const;
  Poly powmod(const Int& e, const Poly& mod) const;
  Scalar eval(const Scalar& x) const;
  Poly compose(const Poly& q) const;
  Poly convert(RingPtr target) const;
  Poly lift(RingPtr target) const;

  // Content and primitive part over Z.
  Int content() const;
  Poly primitive() const;

  std::string str(const std::string& var = "t") const;

 private:
  RingPtr r_ = nullptr;
  std::vector<Scalar> c_;
  void trim();
};

Poly poly_gcd(const Poly& a, const Poly& b);  // over a field, monic
// Extended gcd over a field: g = s a + t b.
void poly_xgcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t);
// Resultant over a field or Z (Z via rational arithmetic).
Scalar resultant(const Poly& a, const Poly& b);
Scalar discriminant(const Poly& a);

struct Factor {
  Poly f;
  int mult;
};

// Squarefree decomposition and full factorization over a prime field
// F_p (Galois ring with m = 1, degree 1). Factors are monic.
std::vector<Factor> factor_fp(const Poly& f);
// Factorization over Z: returns the content sign*|content| and primitive
// irreducible factors with positive leading coefficients.
std::vector<Factor> factor_z(const Poly& f, Int* content = nullptr);
bool is_irreducible_fp(const Poly& f);

// Lift a coprime factorization f = prod gbar_i mod p of a monic f over Z
// (or Z/p^m) to monic factors mod p^m.
std::vector<Poly> hensel_lift(const Poly& f, const std::vector<Poly>& fbar, int m);

// Newton lift of a simple root of f (integer coefficients) from an
// approximation mod p in the Galois ring `target` (any precision).
Scalar newton_root(const Poly& f_over_z, const Scalar& approx_mod_p, RingPtr target);

}  // namespace adelix
