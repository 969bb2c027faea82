#include <random>

#include "adelix/symbols.hpp"
#include "doctest.h"

using namespace adelix;

namespace {

Laurent L(RingPtr r, const std::string& s) { return parse_laurent(r, s); }

// Substitute t -> phi in an exact Laurent polynomial.
Laurent substitute(const Laurent& a, const Laurent& phi) {
  Laurent acc(a.ring(), kInfPrec);
  for (int e = a.lo(); e <= a.hi(); ++e) {
    if (a.coeff(e).is_zero()) continue;
    acc = acc + phi.pow(e) * a.coeff(e);
  }
  return acc;
}

bool unit_one(const Scalar& s, int n) { return s.valuation() == 0 && s.unit_part(n).is_one(); }

}  // namespace

TEST_CASE("tame symbol examples") {
  RingPtr F5 = ring_prime_field(5);
  RingPtr Q = ring_rationals();
  CHECK(tame_pair(Laurent::t(F5), Laurent::t(F5)).integer() == 4);
  CHECK(tame_pair(L(Q, "t"), L(Q, "1-t")).is_one());
  CHECK(tame_pair(L(Q, "3+t"), L(Q, "t")) == Scalar::from_long(Q, 3));
  // {t^2, 2t^3} : (-1)^6 * 1^3 / 2^2
  CHECK(tame_pair(L(Q, "t^2"), L(Q, "2*t^3")) == Scalar::from_rat(Q, Rat(1, 4)));
}

TEST_CASE("tame symbol is a homomorphism on words") {
  RingPtr F7 = ring_prime_field(7);
  Laurent a = L(F7, "3*t^2+t^3"), b = L(F7, "5/t+1"), c = L(F7, "2+t");
  LaurentWord w1(a, b, 2), w2(c, a, -1);
  CHECK(tame_symbol(w1 * w2) == tame_symbol(w1) * tame_symbol(w2));
  CHECK(tame_symbol(w1.power(3)) == tame_symbol(w1).pow(3));
}

TEST_CASE("tame symbol depends only on valuations and leading units") {
  std::mt19937_64 rng(3);
  RingPtr F7 = ring_prime_field(7);
  for (int i = 0; i < 50; ++i) {
    auto rnd = [&](int lo) {
      std::vector<Scalar> c{Scalar::from_long(F7, 1 + static_cast<long>(rng() % 6))};
      for (int k = 0; k < 3; ++k) c.push_back(Scalar::from_long(F7, static_cast<long>(rng() % 7)));
      return Laurent(F7, lo, c);
    };
    Laurent a = rnd(static_cast<int>(rng() % 5) - 2), b = rnd(static_cast<int>(rng() % 5) - 2);
    Laurent one_unit = rnd(0).shift(1) + Laurent::constant(Scalar::one(F7));
    CHECK(tame_pair(a * one_unit, b) == tame_pair(a, b));
  }
}

TEST_CASE("tame symbol does not depend on the choice of uniformizer") {
  RingPtr F5 = ring_prime_field(5);
  Laurent phi = L(F5, "3*t+t^2+2*t^3");  // another uniformizer
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    auto rnd = [&]() {
      int lo = static_cast<int>(rng() % 5) - 2;
      std::vector<Scalar> c{Scalar::from_long(F5, 1 + static_cast<long>(rng() % 4))};
      for (int k = 0; k < 2; ++k) c.push_back(Scalar::from_long(F5, static_cast<long>(rng() % 5)));
      return Laurent(F5, lo, c);
    };
    Laurent a = rnd(), b = rnd();
    CHECK(tame_pair(substitute(a, phi), substitute(b, phi)) == tame_pair(a, b));
  }
}

TEST_CASE("tame symbol needs a field") {
  RingPtr W = ring_galois(5, 3, {0, 1});
  CHECK_THROWS_AS(tame_pair(Laurent::t(W), Laurent::t(W)), DomainError);
}

TEST_CASE("Kato residue examples") {
  RingPtr Q5 = ring_padic(5, 6);
  TwoDim five = TwoDim::from_scalar(Scalar::from_long(Q5, 5));
  TwoDim t = TwoDim::t(Q5);
  Scalar r = kato_pair(five, t, 4);
  CHECK(r.valuation() == 1);
  CHECK(r.unit_part(4).is_one());
  CHECK(unit_one(kato_pair(parse_twodim(Q5, "1+5*t"), t, 4), 4));
  // Res({a, t}) = a for constants
  for (long a : {3L, 7L, 50L, 1234L}) {
    Scalar ra = kato_pair(TwoDim::from_scalar(Scalar::from_long(Q5, a)), t, 5);
    CHECK(ra.congruent(Scalar::from_long(Q5, a), ra.absprec()));
    CHECK(ra.valuation() == pvaluation(Int(a), Int(5)));
  }
  // {t, t} = -1
  Scalar tt = kato_pair(t, t, 4);
  CHECK(tt.valuation() == 0);
  CHECK((tt.unit_part(4) + Scalar::one(tt.unit_part(4).ring())).is_zero());
}

TEST_CASE("Kato residue kills symbols of integral power series") {
  RingPtr Q5 = ring_padic(5, 6);
  // entries in Q_5 (x) Z_5[[t]]; 1-units and constants
  const char* f[] = {"1+t+3*t^2", "2-t^3", "5*(1+t)", "7+5*t"};
  const char* g[] = {"3+t", "1-5*t^2", "11", "1+t+t^2+t^3"};
  for (auto a : f)
    for (auto b : g) CHECK(unit_one(kato_pair(parse_twodim(Q5, a), parse_twodim(Q5, b), 4), 4));
}

TEST_CASE("Kato residue across a p-divisible pole") {
  RingPtr Q5 = ring_padic(5, 7);
  // 1 + p/t is p-adically a unit with an invisible pole; {p, 1+p/t} = 1
  TwoDim p = TwoDim::from_scalar(Scalar::from_long(Q5, 5));
  TwoDim x = parse_twodim(Q5, "1+5/t");
  CHECK(unit_one(kato_pair(p, x, 5), 5));
  // {1 - g t, 1 - p/t} = 1 - g p, the zero of 1 - p/t sits at t = p
  TwoDim y = parse_twodim(Q5, "1-5/t");
  for (long g : {1L, 2L, 13L}) {
    TwoDim a = parse_twodim(Q5, "1-" + std::to_string(g) + "*t");
    Scalar r = kato_pair(a, y, 5);
    CHECK(r.valuation() == 0);
    CHECK(r.unit_part(5) == Scalar::from_long(ring_galois(5, 5), 1 - 5 * g));
    CHECK(kato_pair(y, a, 5).unit_part(5) == r.unit_part(5).inv());
    CHECK(kato_pair(a, x, 5).unit_part(5) == Scalar::from_long(ring_galois(5, 5), 1 + 5 * g));
  }
  Weierstrass W = weierstrass(x, 5);
  CHECK(W.J() == 1);
  CHECK(W.a == -1);
  CHECK(W.M == 0);
}

TEST_CASE("Weierstrass decomposition recomposes exactly") {
  RingPtr Q5 = ring_padic(5, 6);
  const char* xs[] = {"25/t^2+5/t+3+t", "5/t^3+1/t+2*t", "125/t^4+7", "1+t"};
  for (auto s : xs) {
    TwoDim x = parse_twodim(Q5, s);
    Weierstrass W = weierstrass(x, 6);
    RingPtr A = W.G.ring();
    Laurent rec = Laurent::from_poly(W.Q) * W.G;
    Laurent S = x.unit_series().shift(-W.a);
    CHECK(rec == S.convert(A));
    CHECK(W.Q.is_monic());
  }
}

TEST_CASE("Kato residue agrees with the tame symbol on unit entries") {
  std::mt19937_64 rng(5);
  RingPtr Q7 = ring_padic(7, 5);
  RingPtr F7 = ring_prime_field(7);
  for (int i = 0; i < 30; ++i) {
    auto rnd = [&]() {
      int lo = static_cast<int>(rng() % 5) - 2;
      std::vector<Scalar> c{Scalar::from_long(Q7, 1 + static_cast<long>(rng() % 6))};
      for (int k = 0; k < 3; ++k) c.push_back(Scalar::from_long(Q7, static_cast<long>(rng() % 49)));
      return Laurent(Q7, lo, c);
    };
    Laurent a = rnd(), b = rnd();
    Scalar k = kato_pair(TwoDim::from_laurent(Q7, a), TwoDim::from_laurent(Q7, b), 3);
    Scalar t = tame_pair(a.convert(F7), b.convert(F7));
    CHECK(k.valuation() == 0);
    CHECK(k.unit_part(1).integer() == t.integer());
  }
}

TEST_CASE("Kato residue is stable under raising the precision") {
  std::mt19937_64 rng(23);
  RingPtr Q5 = ring_padic(5, 8);
  RingPtr W = ring_galois(5, 8, {0, 1});
  for (int i = 0; i < 30; ++i) {
    auto rnd = [&]() {
      std::vector<Scalar> c;
      for (int k = 0; k < 4; ++k) c.push_back(Scalar::from_long(W, static_cast<long>(rng() % 100000)));
      c[rng() % 4] = Scalar::from_long(W, 1 + static_cast<long>(rng() % 4));
      return TwoDim(Q5, static_cast<int>(rng() % 3) - 1, Laurent(W, static_cast<int>(rng() % 5) - 2, c));
    };
    TwoDim a = rnd(), b = rnd();
    for (int n = 2; n <= 4; ++n) {
      Scalar lo = kato_pair(a, b, n), hi = kato_pair(a, b, n + 2);
      CHECK(lo.valuation() == hi.valuation());
      CHECK(lo.unit_part(n) == hi.unit_part(n));
    }
  }
}

TEST_CASE("Kato residue refuses to exceed the stored precision") {
  RingPtr Q5 = ring_padic(5, 4);
  TwoDim x = parse_twodim(Q5, "1+t");
  CHECK_THROWS_AS(kato_pair(x, TwoDim::t(Q5), 6), PrecisionExhausted);
  // a truncated series with a hidden p-divisible polar part
  RingPtr Q5b = ring_padic(5, 8);
  TwoDim y = TwoDim::from_laurent(Q5b, L(Q5b, "{-1:5,0:1,1:1}+O(t^2)"));
  TwoDim z = TwoDim::from_laurent(Q5b, L(Q5b, "{-3:5,0:1}"));
  CHECK_THROWS_AS(kato_pair(y, z, 6), PrecisionExhausted);
}

TEST_CASE("symbol relations hold on random units") {
  RelationReport r = symbol_relations_check(ring_prime_field(7), ring_padic(5, 6), 5, 40, 99);
  INFO(r.str());
  CHECK(r.ok());
  for (auto& l : r.lines) CHECK(l.total > 0);
  RelationReport q = symbol_relations_check(ring_rationals(), nullptr, 0, 40, 7);
  CHECK(q.ok());
}

TEST_CASE("norms down finite extensions") {
  RingPtr F9 = ring_galois(3, 1, {1, 0, 1});
  Scalar i = Scalar::generator(F9);
  CHECK(norm_k1(i).integer() == 1);
  RingPtr Q49 = ring_padic(7, 5, {3, 6, 1});  // x^2 + 6x + 3 irreducible mod 7
  Scalar seven = Scalar::from_long(Q49, 7);
  Scalar n7 = norm_k1(seven);
  CHECK(n7.valuation() == 2);
  CHECK(n7.unit_part(5).is_one());
  CHECK(norm_from_base(Scalar::from_long(ring_padic(7, 5), 7), Q49) == Scalar::from_long(ring_padic(7, 5), 49));
  // a norm is the product with the Frobenius conjugate
  RingPtr F25 = ring_galois(5, 1, {2, 0, 1});
  Scalar a = Scalar::generator(F25) + Scalar::from_long(F25, 3);
  Scalar conj = a.pow(5);
  CHECK(norm_k1(a).integer() == (a * conj).coeffs()[0]);
}

TEST_CASE("symbol word text round trip") {
  RingPtr F5 = ring_prime_field(5);
  LaurentWord w(L(F5, "t"), L(F5, "1-t"), 2);
  w.add(L(F5, "3+t^2"), L(F5, "t^-1"), -1);
  LaurentWord back = parse_laurent_word(F5, word_str(w));
  REQUIRE(back.pairs.size() == 2);
  CHECK(tame_symbol(back) == tame_symbol(w));
  CHECK(back.pairs[1].e == -1);
  RingPtr Q5 = ring_padic(5, 5);
  TwoDimWord k(parse_twodim(Q5, "5"), TwoDim::t(Q5), 3);
  TwoDimWord kb = parse_twodim_word(Q5, word_str(k));
  CHECK(kato_res(kb, 4).valuation() == 3);
  CHECK_THROWS_AS(parse_laurent_word(F5, "(t) , (t)"), ParseError);
}
