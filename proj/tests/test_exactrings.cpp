#include <random>

#include "adelix/poly.hpp"
#include "adelix/ring.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adelix;

TEST_CASE("inverse of 3 in Z_7 to precision 4") {
  RingPtr Q7 = ring_padic(7, 4);
  Scalar x = Scalar::from_long(Q7, 3).inv();
  // frozen from the extended-Euclid oracle
  CHECK(oracle::inverse_mod(3, 2401) == 1601);
  CHECK(x.unit_part(4).integer() == 1601);
  CHECK(x.valuation() == 0);
  CHECK((x * Scalar::from_long(Q7, 3)).is_one());
}

TEST_CASE("p-adic valuation") {
  RingPtr Q7 = ring_padic(7, 6);
  CHECK(Scalar::from_long(Q7, 98).valuation() == 2);
  Scalar a = Scalar::from_rat(Q7, Rat(5, 49));
  CHECK(a.valuation() == -2);
  CHECK((a * Scalar::from_long(Q7, 98)).valuation() == 0);
}

TEST_CASE("p-adic precision propagation") {
  RingPtr Q5 = ring_padic(5, 6);
  Scalar a = Scalar::from_long(Q5, 1);
  Scalar b = Scalar::from_long(Q5, 1 + 5 * 5 * 5);
  Scalar d = b - a;  // 125 known to 6 absolute digits
  CHECK(d.valuation() == 3);
  CHECK(d.relprec() == 3);
  CHECK(d.absprec() == 6);
  Scalar z = a - a;
  CHECK(z.is_zero());
  CHECK(z.absprec() == 6);
  CHECK_THROWS_AS(z.valuation(), PrecisionExhausted);
  CHECK_THROWS_AS(z.inv(), NotAUnit);
}

TEST_CASE("ring axioms on random p-adics and Galois elements") {
  std::mt19937_64 rng(11);
  RingPtr Q5 = ring_padic(5, 8);
  RingPtr W = ring_galois(5, 4, {2, 0, 1});  // x^2 + 2 is irreducible mod 5
  for (int it = 0; it < 200; ++it) {
    auto rnd = [&](RingPtr R) {
      std::vector<Int> c;
      for (int i = 0; i < R->degree(); ++i) c.push_back(Int(static_cast<long>(rng() % 100000)) - 50000);
      if (R->kind == RingKind::PAdic) return Scalar::padic(R, static_cast<int>(rng() % 5) - 2, c, R->m);
      return Scalar::from_coeffs(R, c);
    };
    for (RingPtr R : {Q5, W}) {
      Scalar a = rnd(R), b = rnd(R), c = rnd(R);
      if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
      Scalar l = (a * b) * c, r = a * (b * c);
      int n = std::min(l.absprec(), r.absprec());
      CHECK(l.congruent(r, n));
      Scalar d1 = a * (b + c), d2 = a * b + a * c;
      n = std::min(d1.absprec(), d2.absprec());
      CHECK(d1.congruent(d2, n));
      if (a.is_unit()) CHECK((a * a.inv()).congruent(Scalar::one(R), R->kind == RingKind::PAdic ? a.relprec() : R->m));
      if (R->kind == RingKind::PAdic) CHECK((a * b).valuation() == a.valuation() + b.valuation());
    }
  }
}

TEST_CASE("precision monotonicity of p-adic arithmetic") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 50; ++it) {
    long x = static_cast<long>(rng() % 1000000) + 1, y = static_cast<long>(rng() % 1000000) + 1;
    RingPtr lo = ring_padic(5, 6), hi = ring_padic(5, 8);
    Scalar a = Scalar::from_rat(lo, Rat(x, y)) * Scalar::from_long(lo, x + 3);
    Scalar b = Scalar::from_rat(hi, Rat(x, y)) * Scalar::from_long(hi, x + 3);
    Scalar bl = b.convert(lo);
    CHECK(bl == a);
  }
}

TEST_CASE("norm down an unramified extension") {
  RingPtr F9 = ring_galois(3, 1, {1, 0, 1});  // F_3(i), i^2 = -1
  Scalar i = Scalar::generator(F9);
  CHECK(norm_to_prime(i).integer() == 1);
  RingPtr Q49 = ring_padic(7, 5, {1, 0, 1});  // x^2+1 irreducible mod 7
  Scalar n = norm_to_prime(Scalar::from_long(Q49, 7));
  CHECK(n.valuation() == 2);
  CHECK(n.unit_part(5).integer() == 1);
  // norm of a base scalar is its square
  Scalar c = Scalar::from_long(Q49, 3);
  CHECK(norm_to_prime(c).unit_part(5).integer() == 9);
  // multiplicativity
  Scalar a = Scalar::from_coeffs(Q49, {2, 5}), b = Scalar::from_coeffs(Q49, {11, -3});
  CHECK(norm_to_prime(a * b) == norm_to_prime(a) * norm_to_prime(b));
}

TEST_CASE("scalar serialization round trip") {
  RingPtr Q7 = ring_padic(7, 5);
  RingPtr W = ring_galois(5, 3, {2, 0, 1});
  std::vector<Scalar> xs = {Scalar::from_rat(Q7, Rat(3, 98)), Scalar::padic_zero(Q7, 4), Scalar::zero(Q7),
                            Scalar::from_coeffs(W, {7, 101}), Scalar::from_rat(ring_rationals(), Rat(-4, 6)),
                            Scalar::from_coeffs(ring_fp_poly(3), {1, 0, 2})};
  for (auto& x : xs) CHECK(parse_scalar(x.ring(), x.str()) == x);
}

TEST_CASE("Hensel lifting of t^2 - 2 over Z_7") {
  RingPtr F7 = ring_prime_field(7);
  Poly f = Poly::from_ints(ring_integers(), {-2, 0, 1});
  auto lifts = hensel_lift(f, {Poly::from_ints(F7, {-3, 1}), Poly::from_ints(F7, {-4, 1})}, 3);
  REQUIRE(lifts.size() == 2);
  // frozen from the Newton-iteration oracle on the root 3 mod 7
  CHECK(oracle::hensel_root(-2, 0, 3, 7, 3) == 108);
  CHECK(oracle::hensel_root(-2, 0, 4, 7, 3) == 235);
  CHECK(lifts[0].coeff(0).integer() == 343 - 108);
  CHECK(lifts[1].coeff(0).integer() == 343 - 235);
  CHECK(lifts[0] * lifts[1] == f.convert(ring_galois(7, 3)));
}

TEST_CASE("Hensel lifting edge cases") {
  RingPtr F5 = ring_prime_field(5);
  Poly f = Poly::from_ints(ring_integers(), {0, -1, 1});
  auto lifts = hensel_lift(f, {Poly::from_ints(F5, {0, 1}), Poly::from_ints(F5, {-1, 1})}, 4);
  RingPtr R = ring_galois(5, 4);
  CHECK(lifts[0] == Poly::from_ints(R, {0, 1}));
  CHECK(lifts[1] == Poly::from_ints(R, {-1, 1}));
  Poly g = Poly::from_ints(ring_integers(), {-5, 0, 1});
  CHECK_THROWS_AS(hensel_lift(g, {Poly::from_ints(F5, {0, 0, 1})}, 4), NotSquarefreeModP);
  CHECK_THROWS_AS(hensel_lift(g, {Poly::from_ints(F5, {0, 1}), Poly::from_ints(F5, {0, 1})}, 4), NotSquarefreeModP);
}

TEST_CASE("Hensel product property on random monic polynomials") {
  std::mt19937_64 rng(3);
  RingPtr F = ring_prime_field(11);
  int tried = 0;
  for (int it = 0; it < 60 && tried < 25; ++it) {
    std::vector<long> c;
    for (int i = 0; i < 5; ++i) c.push_back(static_cast<long>(rng() % 41) - 20);
    c.push_back(1);
    Poly f = Poly::from_ints(ring_integers(), c);
    auto fs = factor_fp(f.convert(F));
    bool sqf = true;
    std::vector<Poly> parts;
    for (auto& x : fs) {
      sqf = sqf && x.mult == 1;
      parts.push_back(x.f);
    }
    if (!sqf || parts.size() < 2) continue;
    ++tried;
    auto lifts = hensel_lift(f, parts, 6);
    Poly prod = Poly::constant(Scalar::one(ring_galois(11, 6)));
    for (auto& l : lifts) prod = prod * l;
    CHECK(prod == f.convert(ring_galois(11, 6)));
  }
  CHECK(tried >= 10);
}

TEST_CASE("factorization over F_p and Z") {
  RingPtr F5 = ring_prime_field(5);
  // (t^2+2)(t+1)^2 over F_5
  Poly f = Poly::from_ints(F5, {2, 0, 1}) * Poly::from_ints(F5, {1, 1}).pow(2);
  auto fs = factor_fp(f);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].f == Poly::from_ints(F5, {1, 1}));
  CHECK(fs[0].mult == 2);
  CHECK(fs[1].f == Poly::from_ints(F5, {2, 0, 1}));
  // p = 2 equal-degree splitting
  RingPtr F2 = ring_prime_field(2);
  Poly g = Poly::from_ints(F2, {1, 1, 1}) * Poly::from_ints(F2, {1, 1, 0, 1});
  CHECK(factor_fp(g).size() == 2);
  RingPtr Z = ring_integers();
  Poly h = Poly::from_ints(Z, {-2, 0, 1}) * Poly::from_ints(Z, {1, 2}) * Poly::from_ints(Z, {3, 0, 0, 1}) * Scalar::from_long(Z, -6);
  Int cont;
  auto hz = factor_z(h, &cont);
  CHECK(cont == -6);
  REQUIRE(hz.size() == 3);
  Poly back = Poly::constant(Scalar::from_int(Z, cont));
  for (auto& x : hz) back = back * x.f.pow(x.mult);
  CHECK(back == h);
  // x^4 + 1 is irreducible over Z but splits mod every prime
  Poly s = Poly::from_ints(Z, {1, 0, 0, 0, 1});
  CHECK(factor_z(s).size() == 1);
}

TEST_CASE("resultant and Newton roots") {
  RingPtr Z = ring_integers();
  Poly a = Poly::from_ints(Z, {-2, 0, 1}), b = Poly::from_ints(Z, {-3, 1});
  CHECK(resultant(a, b).integer() == 7);
  RingPtr W = ring_galois(7, 5);
  Scalar r = newton_root(a, Scalar::from_long(ring_prime_field(7), 3), W);
  CHECK((r * r).integer() == 2);
  CHECK(r.congruent(Scalar::from_long(W, 108), 3));
}

// ---------------------------------------------------------------------------
// Laurent series and F{{t}}

#include "adelix/laurent.hpp"
#include "adelix/linalg.hpp"
#include "adelix/twodim.hpp"

TEST_CASE("geometric series inverse") {
  RingPtr Q = ring_rationals();
  Laurent a = Laurent::from_ints(Q, 0, {1, -1});
  Laurent b = a.inv(4);
  CHECK(b == Laurent::from_ints(Q, 0, {1, 1, 1, 1}, 4));
  CHECK(b.str() == "{0:1,1:1,2:1,3:1}+O(t^4)");
}

TEST_CASE("monomial identity and valuation") {
  RingPtr F5 = ring_prime_field(5);
  CHECK((Laurent::t(F5, -1) * Laurent::t(F5)).is_one());
  RingPtr Q = ring_rationals();
  CHECK((Laurent::t(Q, 2) * Laurent::from_ints(Q, 0, {1, 1})).valuation() == 2);
  CHECK_THROWS_AS(Laurent(Q, 5).valuation(), PrecisionExhausted);
}

TEST_CASE("truncated series precision bookkeeping") {
  RingPtr Q = ring_rationals();
  Laurent a = Laurent::from_ints(Q, -2, {1, 2, 3}, 6);   // t^-2 + ... + O(t^6)
  Laurent b = Laurent::from_ints(Q, 1, {5}, 4);          // 5t + O(t^4)
  Laurent c = a * b;
  CHECK(c.prec() == 2);  // min(6 + 1, 4 - 2)
  CHECK(c.lo() == -1);
  CHECK_THROWS_AS(c.coeff(2), PrecisionExhausted);
  Laurent ai = a.inv();
  CHECK(ai.valuation() == 2);
  CHECK(ai.prec() == 10);  // relative precision 8 shifted by 2
  CHECK((a * ai).agrees(Laurent::constant(Scalar::one(Q), 8), 6));
}

TEST_CASE("series inverse over a local coefficient ring") {
  RingPtr A = ring_galois(5, 4);
  // 1 + 5/t is a unit: its nilpotent negative part is killed by 5^4
  Laurent x = Laurent::from_ints(A, -1, {5, 1});
  Laurent y = x.inv(12);
  Laurent prod = x * y;
  CHECK(prod.agrees(Laurent::constant(Scalar::one(A), 12), prod.prec()));
  CHECK(y.lo() < 0);
  CHECK(x.valuation() == 0);
}

TEST_CASE("random series ring axioms") {
  std::mt19937_64 rng(44);
  for (RingPtr R : {ring_prime_field(7), ring_rationals(), ring_galois(3, 3)}) {
    for (int it = 0; it < 40; ++it) {
      auto rnd = [&]() {
        std::vector<long> c;
        int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) c.push_back(static_cast<long>(rng() % 13) - 6);
        c[0] = 1 + static_cast<long>(rng() % 2);
        return Laurent::from_ints(R, static_cast<int>(rng() % 5) - 2, c, 10);
      };
      Laurent a = rnd(), b = rnd(), c = rnd();
      Laurent l = (a * b) * c, r = a * (b * c);
      CHECK(l.agrees(r, std::min(l.prec(), r.prec())));
      Laurent d1 = a * (b + c), d2 = a * b + a * c;
      CHECK(d1.agrees(d2, std::min(d1.prec(), d2.prec())));
      Laurent ai = a.inv();
      Laurent one = a * ai;
      CHECK(one.agrees(Laurent::constant(Scalar::one(R)), one.prec()));
      CHECK((a * b).valuation() == a.valuation() + b.valuation());
    }
  }
}

TEST_CASE("Laurent serialization round trip") {
  RingPtr Q7 = ring_padic(7, 5);
  std::vector<Laurent> xs = {Laurent::from_ints(ring_rationals(), -3, {2, 0, -1}, 4),
                             Laurent::from_ints(ring_prime_field(5), 0, {1, 3}),
                             parse_laurent(Q7, "7/t + 3 + t^2/49"), Laurent(ring_rationals(), 3)};
  for (auto& x : xs) CHECK(parse_laurent(x.ring(), x.str()) == x);
  CHECK(parse_laurent(ring_rationals(), "t^-1 + 1/2*t") == Laurent(ring_rationals(), -1, {Scalar::one(ring_rationals()), Scalar::zero(ring_rationals()), Scalar::from_rat(ring_rationals(), Rat(1, 2))}));
}

TEST_CASE("two-dimensional local field elements") {
  RingPtr Q5 = ring_padic(5, 6);
  TwoDim x = parse_twodim(Q5, "5 + 2*t");
  CHECK(x.pval() == 0);
  CHECK(x.tval() == 1);
  TwoDim y = parse_twodim(Q5, "25 + 50*t");
  CHECK(y.pval() == 2);
  TwoDim z = parse_twodim(Q5, "1 + 5/t");
  TwoDim zi = z.inv();
  TwoDim w = z * zi;
  CHECK(w.pval() == 0);
  Laurent wl = w.to_laurent();
  CHECK(wl.coeff(0).congruent(Scalar::one(Q5), 6));
  CHECK(parse_twodim(Q5, x.str()) == x);
  CHECK(parse_twodim(Q5, z.str()) == z);
  // sum renormalizes when the leading terms cancel
  TwoDim s = parse_twodim(Q5, "1 + t") + parse_twodim(Q5, "-1 + 5*t");
  CHECK(s.pval() == 0);
  TwoDim s2 = parse_twodim(Q5, "1 + 5*t") - parse_twodim(Q5, "1");
  CHECK(s2.pval() == 1);
  CHECK(s2.relprec() == 5);
}

TEST_CASE("determinants and Smith form") {
  RingPtr Z = ring_integers();
  SMatrix m = int_matrix(Z, {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(det(m).integer() == -144);  // cofactor expansion by hand
  SmithForm s = smith_form(m);
  REQUIRE(s.rank == 3);
  CHECK(s.invariants[0].integer() == 2);
  CHECK(s.invariants[1].integer() == 6);
  CHECK(s.invariants[2].integer() == 12);
  RingPtr F = ring_prime_field(7);
  SMatrix k = int_matrix(F, {{1, 2, 3}, {2, 4, 6}});
  CHECK(rank(k) == 1);
  SMatrix ker = kernel(k);
  CHECK(ker.rows() == 2);
  CHECK((k * ker.transpose()) == zero_matrix(F, 2, 2));
  RingPtr W = ring_galois(3, 4);
  SMatrix lw = int_matrix(W, {{3, 1}, {9, 2}});
  CHECK(det(lw).integer() == 81 - 3);
}
