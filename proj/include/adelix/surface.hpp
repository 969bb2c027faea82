#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adelix/bundles.hpp"
#include "adelix/poly.hpp"
#include "adelix/symbols.hpp"

namespace adelix {

// Prime factorization of a nonzero integer (sign dropped).
std::vector<std::pair<Int, int>> factor_integer(const Int& n);

// Nonzero rational function in one variable t, kept factored. Over Z the
// constant lives in Q and the factors are primitive irreducible polynomials
// with positive leading coefficient; over F_p the constant is in F_p and the
// factors are monic irreducible.
class RatFun {
 public:
  RatFun() = default;
  static RatFun constant(RingPtr base, const Scalar& c);
  static RatFun from_int(RingPtr base, long c);
  static RatFun from_poly(const Poly& f);
  static RatFun from_laurent(RingPtr base, const Laurent& f);
  static RatFun ratio(const Poly& num, const Poly& den);
  static RatFun t(RingPtr base, long e = 1);

  RingPtr base() const { return base_; }
  const Scalar& const_part() const { return c_; }
  const std::vector<std::pair<Poly, long>>& factors() const { return f_; }

  RatFun operator*(const RatFun& b) const;
  RatFun operator/(const RatFun& b) const { return *this * b.inv(); }
  RatFun inv() const;
  RatFun pow(long e) const;
  bool operator==(const RatFun& b) const;

  // deg numerator - deg denominator.
  long degree() const;
  long order(const Poly& h) const;  // exponent of an irreducible factor
  long pval(const Int& p) const;    // valuation of the constant
  // Numerator and denominator over the base (Z or F_p).
  std::pair<Poly, Poly> expand() const;
  Scalar eval(const Scalar& x) const;  // factors and constant mapped into x's ring
  std::string str() const;

 private:
  RingPtr base_ = nullptr;
  Scalar c_;
  std::vector<std::pair<Poly, long>> f_;
  void normalize();
};

RatFun parse_ratfun(RingPtr base, const std::string& text);
// Random f of height <= h: a ratio of random polynomials of degree <= deg.
template <class Rng>
RatFun random_ratfun(Rng& rng, RingPtr base, int h, int deg);

// ---------------------------------------------------------------------------
// Points of P^1 over Z.

enum class CurveKind { Horizontal, Infinity, Vertical };

// Codimension-one point: the closure of {h = 0} for a primitive irreducible h,
// the section at infinity, or the fiber over a prime p.
struct Curve {
  CurveKind kind = CurveKind::Horizontal;
  Poly h;
  Int p;

  static Curve horizontal(const Poly& h);
  static Curve infinity();
  static Curve vertical(const Int& p);
  // Local equation as a rational function on the chart t != infinity.
  RatFun equation() const;
  std::string str() const;
  bool operator==(const Curve& b) const;
  bool operator<(const Curve& b) const;
};

// Closed point: a prime p and a monic irreducible residue polynomial over F_p,
// or the point at infinity of the fiber.
struct ClosedPoint {
  Int p;
  Poly fbar;  // over F_p; unused at infinity
  bool at_infinity = false;

  static ClosedPoint finite(const Poly& fbar);
  static ClosedPoint infinity(const Int& p);
  static ClosedPoint parse(const std::string& text);  // "(5, t)", "(7, t-3)", "(5, inf)"
  int degree() const { return at_infinity ? 1 : fbar.degree(); }
  std::string str() const;
  bool operator==(const ClosedPoint& b) const;
  bool operator<(const ClosedPoint& b) const;
};

bool lies_on(const ClosedPoint& x, const Curve& c);
// Order of f along a codimension-one point.
long valuation_at(const Curve& c, const RatFun& f);
// Closed points of a horizontal curve (or of the section at infinity) over p.
std::vector<ClosedPoint> points_over(const Curve& c, const Int& p);

// One branch of a horizontal curve at a closed point: the root theta of h
// (of the reversed polynomial at infinity) in W(F_q), q = p^deg.
struct Branch {
  RingPtr field;  // Q_q with the working precision
  Scalar theta;
  bool at_infinity = false;
};

struct Multicompletion {
  Curve eta1;
  ClosedPoint eta2;
  std::string ring;  // W(F_q){{t}} or Q_q[[t_a]]
  std::string field;
  std::vector<Branch> branches;
  std::string str() const;
};
// Raises NotSquarefreeModP for a ramified horizontal branch.
Multicompletion multicompletion(const Curve& eta1, const ClosedPoint& eta2, int prec = 8);

// ---------------------------------------------------------------------------
// Ideles over the base and pushdowns.

// Finitely supported family of elements of Q_p, one per prime.
struct IdeleClass {
  int precision = 0;
  std::map<Int, Scalar> comps;

  explicit IdeleClass(int m = 0) : precision(m) {}
  static IdeleClass diagonal(const Scalar& q, const std::vector<Int>& primes, int m);
  void multiply(const Int& p, const Scalar& x);
  Scalar at(const Int& p) const;
  int valuation(const Int& p) const;
  Int unit_residue(const Int& p) const;  // unit part mod p^precision
  IdeleClass operator*(const IdeleClass& b) const;
  IdeleClass inv() const;
  std::vector<Int> support() const;  // primes with nonzero valuation
  std::string str() const;
};

// Membership in Q^x * prod Z_p^x: the candidate q = prod p^{v_p} and the
// unit check of x_p / q at every stored place, to the idele's precision.
struct MembershipReport {
  bool passed = false;
  Scalar candidate;
  std::string detail;
};
MembershipReport class_membership(const IdeleClass& x);
bool same_class(const IdeleClass& a, const IdeleClass& b);
// Same valuations everywhere and unit parts agreeing mod p^m on `places`.
bool idele_agree(const IdeleClass& a, const IdeleClass& b, const std::vector<Int>& places, int m);

// The pushdown of {f, g} at the triple (generic point, eta1, eta2), an element
// of Q_p known to relative precision m. Horizontal eta1: normed tame symbols
// over the branches. Vertical eta1: normed inverse Kato residue at eta2.
Scalar local_pushdown(const Curve& eta1, const ClosedPoint& eta2, const RatFun& f, const RatFun& g, int m);

struct CocycleComponent {
  Curve eta1;
  ClosedPoint eta2;
  RatFun a, b;
  long e = 1;
  bool a_unit = false;    // a is a unit at eta1
  bool integral = false;  // a and b are units at eta1
};
struct AdelicK2Cocycle {
  std::vector<CocycleComponent> comps;
  std::string str() const;
};
IdeleClass pushdown(const AdelicK2Cocycle& z, int m);
// Every component sits at a genuine triple eta2 < eta1 with nonzero entries,
// and the recorded integrality flags are correct.
bool check_witnesses(const AdelicK2Cocycle& z);

// ---------------------------------------------------------------------------
// Divisors, intersection pairing, reciprocity.

// Z-combination of codimension-one points. Text form: "2*H0 - H[t-5] + V3
// + Hinf" with H0 = {t = 0} and V3 the fiber at 3.
struct DivisorLB {
  std::vector<std::pair<Curve, long>> parts;

  static DivisorLB parse(const std::string& text);
  static DivisorLB of(const Curve& c, long n = 1);
  DivisorLB operator+(const DivisorLB& b) const;
  long multiplicity(const Curve& c) const;
  long degree() const;  // degree on the generic fiber
  // Local equation of the divisor at a closed point.
  RatFun local_equation(const ClosedPoint& x) const;
  // Rational section prod eq(C)^{n_C} over the finite components; its divisor
  // is this one plus a multiple of Hinf.
  RatFun section() const;
  std::string str() const;
};

// Components {t_{L,x}, w_{eta1}}^{n(eta1; M)} at eta1 in |M| and x in |L| on eta1.
AdelicK2Cocycle chern_pair(const DivisorLB& L, const DivisorLB& M);

struct LocalContribution {
  std::string locus;
  Scalar value;
};
struct ReciprocityReport {
  std::string kind;
  int precision = 0;
  std::vector<LocalContribution> parts;
  Scalar product;
  bool passed = false;
  std::string str() const;
};
// Product over the closed points of the fiber at p of the vertical pushdowns.
ReciprocityReport reciprocity_vertical(const RatFun& f, const RatFun& g, const Int& p, int m);
// Product over the codimension-one points through x.
ReciprocityReport reciprocity_point(const RatFun& f, const RatFun& g, const ClosedPoint& x, int m);
// The local pushdowns along a horizontal curve against the diagonal image of
// the global norm of the tame symbol.
ReciprocityReport reciprocity_horizontal(const RatFun& f, const RatFun& g, const Curve& h, int m);
// Weil reciprocity on P^1 over F_p: normed tame symbols over all places, exact.
ReciprocityReport weil_reciprocity(const RatFun& f, const RatFun& g);

struct DeligneReport {
  IdeleClass pairing_side, norm_side;
  Scalar norm_value;  // N_{M/S}(l|_M) in Q
  // Per-place norms of the components of L meeting M over p, at the places
  // where unit parts are compared.
  IdeleClass local_norms;
  std::vector<Int> unit_checked;
  bool passed = false;
  std::string str() const;
};
// Valuations are compared against the global norm at every place; unit parts
// against the local norms where those are determined by the pairing data.
DeligneReport deligne_compare(const DivisorLB& L, const DivisorLB& M, int m);

struct RRReport {
  IdeleClass rhs;
  MembershipReport rhs_membership;
  CohomologyReport lhs_L, lhs_O;
  bool lhs_trivial = false;
  bool passed = false;
  int precision = 0;
  std::string str() const;
};
// Moving lemma choices: L is moved to deg(L) H_c and omega^{-1} is 2 Hinf
// (or 2 H_{c+1} when Hinf is in |L|).
RRReport rr_check(const DivisorLB& L, int m, long move = 6);

// ---------------------------------------------------------------------------
// First Chern idele of a Horrocks bundle over Z or Q.

// Family of Det(lambda_{eta0 eta1}) over codimension-one points: the component
// at eta1 is everywhere * (finite chart factor unless eta1 = Hinf) * local[eta1].
struct Codim1Idele {
  RatFun everywhere, finite_chart;
  std::map<Curve, RatFun> local;
  RatFun component(const Curve& c) const;
  // Divisor sum_{eta1} v_{eta1}(component) eta1.
  std::map<Curve, long> divisor() const;
  std::string str() const;
};

struct BasisChoice {
  std::optional<LMatrix> generic;                // in GL_n(Q(t)) with polynomial entries
  std::vector<std::pair<Curve, LMatrix>> local;  // units at the given curve
};
Codim1Idele c1_idele(const HorrocksBundle& B, const BasisChoice& bases = {});

// x / y lies in K^x * prod O_{eta1}^x: its divisor has horizontal degree 0;
// `certificate` is the rational function realizing it.
struct PrincipalReport {
  bool passed = false;
  RatFun certificate;
  std::string detail;
};
PrincipalReport same_c1_class(const Codim1Idele& x, const Codim1Idele& y);

}  // namespace adelix

#include "adelix/surface_random.hpp"
