#include <random>

#include "adelix/loopext.hpp"
#include "doctest.h"

using namespace adelix;

namespace {

Laurent L(RingPtr r, const std::string& s) { return parse_laurent(r, s); }

Laurent rnd_unit(std::mt19937_64& rng, RingPtr R, int vmin, int vmax, int len) {
  int v = vmin + static_cast<int>(rng() % static_cast<unsigned>(vmax - vmin + 1));
  long q = R->p == 0 ? 11 : R->p.get_si();
  std::vector<Scalar> c{Scalar::from_long(R, 1 + static_cast<long>(rng() % static_cast<unsigned long>(q - 1)))};
  for (int i = 1; i < len; ++i) c.push_back(Scalar::from_long(R, static_cast<long>(rng() % static_cast<unsigned long>(q))));
  return Laurent(R, v, c);
}

// Random element of GL_n(F[t, 1/t]) with exact inverse: a product of
// transvections with Laurent-polynomial entries and monomial diagonals.
HElement rnd_h(std::mt19937_64& rng, RingPtr R, int n) {
  LMatrix g = laurent_identity(R, n), gi = g;
  for (int s = 0; s < 3; ++s) {
    int i = static_cast<int>(rng() % n), j = static_cast<int>((i + 1 + rng() % (n - 1)) % n);
    int e = static_cast<int>(rng() % 5) - 2;
    Scalar a = Scalar::from_long(R, 1 + static_cast<long>(rng() % 3));
    LMatrix E = laurent_identity(R, n), Ei = E;
    E(i, j) = Laurent::monomial(a, e);
    Ei(i, j) = Laurent::monomial(-a, e);
    g = g * E;
    gi = Ei * gi;
  }
  int k = static_cast<int>(rng() % 3) - 1;
  std::vector<Laurent> d(n, Laurent::constant(Scalar::one(R))), di = d;
  d[0] = Laurent::t(R, k);
  d[1] = Laurent::t(R, -k);
  di[0] = d[1];
  di[1] = d[0];
  g = g * laurent_diagonal(d);
  gi = laurent_diagonal(di) * gi;
  return HElement::lift(g, gi, Scalar::from_long(R, 1 + static_cast<long>(rng() % 4)));
}

}  // namespace

TEST_CASE("quotient bases of simple lattices") {
  RingPtr F5 = ring_prime_field(5);
  QuotientBasis q0 = quotient_basis(lattice_frame(laurent_identity(F5, 1)), 2);
  REQUIRE(q0.dim() == 2);
  CHECK(q0.vectors[0][0] == Laurent::t(F5, 0));
  CHECK(q0.vectors[1][0] == Laurent::t(F5, 1));
  // g = diag(t): L = t^{-1} F[[t]]
  QuotientBasis q1 = quotient_basis(lattice_frame(laurent_diagonal({Laurent::t(F5)})), 1);
  REQUIRE(q1.dim() == 2);
  CHECK(q1.vectors[0][0] == Laurent::t(F5, -1));
  CHECK(q1.vectors[1][0] == Laurent::t(F5, 0));
  // g = [[t,1],[0,1/t]], g^{-1} = [[1/t,-1],[0,t]]; hand reduction gives
  // (1/t, -1) and (1, 0)
  LMatrix g = laurent_identity(F5, 2);
  g(0, 0) = Laurent::t(F5);
  g(0, 1) = Laurent::t(F5, 0);
  g(1, 1) = Laurent::t(F5, -1);
  QuotientBasis q2 = quotient_basis(lattice_frame(g), 1);
  REQUIRE(q2.dim() == 2);
  CHECK(q2.vectors[0][0] == Laurent::t(F5, -1));
  CHECK(q2.vectors[0][1] == L(F5, "-1"));
  CHECK(q2.vectors[1][0] == Laurent::t(F5, 0));
  CHECK(q2.vectors[1][1].is_zero());
  CHECK_THROWS_AS(quotient_basis(lattice_frame(laurent_diagonal({Laurent::t(F5, -3)})), 1), DomainError);
}

TEST_CASE("identity and inverse laws in the central extension") {
  std::mt19937_64 rng(1);
  RingPtr F5 = ring_prime_field(5);
  for (int it = 0; it < 10; ++it) {
    HElement x = rnd_h(rng, F5, 2);
    HElement e = HElement::identity(F5, 2);
    HElement l = h_mul(e, x), r = h_mul(x, e);
    CHECK(l.c == x.c);
    CHECK(r.c == x.c);
    CHECK(l.g == x.g);
    HElement y = h_mul(x, h_inv(x));
    CHECK(y.c.is_one());
    CHECK(y.g == laurent_identity(F5, 2));
    CHECK(h_mul(h_inv(x), x).c.is_one());
  }
}

TEST_CASE("group law is associative") {
  std::mt19937_64 rng(2);
  RingPtr F5 = ring_prime_field(5);
  for (int it = 0; it < 100; ++it) {
    int n = 2 + static_cast<int>(it % 2);
    HElement x = rnd_h(rng, F5, n), y = rnd_h(rng, F5, n), z = rnd_h(rng, F5, n);
    HElement a = h_mul(h_mul(x, y), z), b = h_mul(x, h_mul(y, z));
    CHECK(a.c == b.c);
    CHECK(a.g == b.g);
  }
}

TEST_CASE("the extension splits over GL_n(F[[t]])") {
  RingPtr Q = ring_rationals();
  LMatrix g = laurent_identity(Q, 2), gi = g;
  g(0, 1) = L(Q, "1+t^2");
  gi(0, 1) = -L(Q, "1+t^2");
  LMatrix h = laurent_diagonal({L(Q, "2+t"), L(Q, "2+t").inv(40)});
  LMatrix hi = laurent_diagonal({L(Q, "2+t").inv(40), L(Q, "2+t")});
  CHECK(h_cocycle(g, gi, h, hi).is_one());
  CHECK(h_cocycle(h, hi, g, gi).is_one());
}

TEST_CASE("boundary examples") {
  RingPtr F5 = ring_prime_field(5);
  RingPtr Q = ring_rationals();
  // {t, t}: tame symbol -1, boundary its inverse
  CHECK(boundary_pair(Laurent::t(F5), Laurent::t(F5)).integer() == 4);
  CHECK(boundary_pair(L(Q, "1+t"), L(Q, "3-t^2")).is_one());
  CHECK(boundary_pair(L(Q, "2"), L(Q, "7")).is_one());
  CHECK(boundary_pair(L(Q, "3+t"), L(Q, "t")) == Scalar::from_rat(Q, Rat(1, 3)));
}

TEST_CASE("boundary inverts the tame symbol") {
  std::mt19937_64 rng(8);
  for (RingPtr R : {ring_prime_field(5), ring_prime_field(7), ring_rationals()}) {
    for (int it = 0; it < 12; ++it) {
      Laurent a = rnd_unit(rng, R, -2, 2, 3), b = rnd_unit(rng, R, -2, 2, 3);
      CHECK((boundary_pair(a, b) * tame_pair(a, b)).is_one());
    }
  }
}

TEST_CASE("boundary does not depend on the window depth or the lifts") {
  std::mt19937_64 rng(9);
  RingPtr F7 = ring_prime_field(7);
  for (int it = 0; it < 8; ++it) {
    Laurent a = rnd_unit(rng, F7, -2, 2, 3), b = rnd_unit(rng, F7, -2, 2, 3);
    CHECK(boundary_pair(a, b, 1) == boundary_pair(a, b, 3));
    Laurent one = Laurent::constant(Scalar::one(F7));
    Laurent ai = a.inv(40), bi = b.inv(40);
    HElement d = HElement::lift(laurent_diagonal({a, ai, one}), laurent_diagonal({ai, a, one}),
                                Scalar::from_long(F7, 3));
    HElement e = HElement::lift(laurent_diagonal({b, one, bi}), laurent_diagonal({bi, one, b}),
                                Scalar::from_long(F7, 5));
    CHECK(h_commutator(d, e) == boundary_pair(a, b));
  }
}

TEST_CASE("boundary over a word is multiplicative") {
  RingPtr F7 = ring_prime_field(7);
  LaurentWord w(L(F7, "t^2+3*t^3"), L(F7, "2/t"), 2);
  w.add(L(F7, "t"), L(F7, "5+t"), -1);
  CHECK(boundary(w) == boundary_pair(w.pairs[0].a, w.pairs[0].b).pow(2) * boundary_pair(L(F7, "t"), L(F7, "5+t")).inv());
  CHECK((boundary(w) * tame_symbol(w)).is_one());
}

TEST_CASE("p-adic boundary inverts the Kato residue") {
  std::mt19937_64 rng(13);
  for (int m = 3; m <= 5; ++m) {
    RingPtr Q5 = ring_padic(5, m + 1);
    RingPtr W = ring_galois(5, m + 1);
    for (int it = 0; it < 6; ++it) {
      auto rnd = [&]() {
        std::vector<Scalar> c;
        for (int k = 0; k < 4; ++k) c.push_back(Scalar::from_long(W, static_cast<long>(rng() % 100000)));
        c[rng() % 4] = Scalar::from_long(W, 1 + static_cast<long>(rng() % 4));
        return TwoDim(Q5, static_cast<int>(rng() % 3) - 1, Laurent(W, static_cast<int>(rng() % 5) - 2, c));
      };
      TwoDim a = rnd(), b = rnd();
      Scalar d = boundary_padic_pair(a, b, m), k = kato_pair(a, b, m);
      Scalar prod = d * k;
      CHECK(prod.valuation() == 0);
      INFO(a.str(), " ", b.str(), " m=", m, " d=", d.str(), " k=", k.str());
      CHECK(prod.unit_part(m).is_one());
    }
  }
}

TEST_CASE("p-adic boundary examples") {
  RingPtr Q5 = ring_padic(5, 5);
  // {a, t} -> 1/a
  for (long a : {2L, 5L, 75L}) {
    Scalar d = boundary_padic_pair(TwoDim::from_scalar(Scalar::from_long(Q5, a)), TwoDim::t(Q5), 4);
    Scalar expect = Scalar::from_rat(Q5, Rat(1, a));
    CHECK(d.valuation() == expect.valuation());
    CHECK(d.unit_part(4) == expect.unit_part(4));
  }
  // {p, 1 + p r}
  std::mt19937_64 rng(4);
  TwoDim p = TwoDim::from_scalar(Scalar::from_long(Q5, 5));
  for (int it = 0; it < 5; ++it) {
    std::string r = std::to_string(rng() % 50) + "/t^2+" + std::to_string(rng() % 50) + "*t+" + std::to_string(rng() % 50);
    TwoDim x = parse_twodim(Q5, "1+5*(" + r + ")");
    Scalar d = boundary_padic_pair(p, x, 4);
    CHECK(d.valuation() == 0);
    CHECK(d.unit_part(4).is_one());
  }
  // units of Z_p<<1/t>>
  CHECK(boundary_padic_pair(parse_twodim(Q5, "1+5/t"), parse_twodim(Q5, "2+5/t+25/t^2"), 4).unit_part(4).is_one());
  CHECK_THROWS_AS(boundary_padic_pair(p, p, 7), PrecisionExhausted);
}

TEST_CASE("elementary factorization recomposes exactly") {
  RingPtr Q = ring_rationals();
  CHECK(elementary_factor(identity_matrix(Q, 3)).empty());
  SMatrix e = identity_matrix(Q, 2);
  e(0, 1) = Scalar::from_long(Q, 7);
  auto w = elementary_factor(e);
  REQUIRE(w.size() == 1);
  CHECK(w[0].i == 0);
  CHECK(w[0].j == 1);
  CHECK(w[0].a == Scalar::from_long(Q, 7));
  SMatrix d = zero_matrix(Q, 2, 2);
  d(0, 0) = Scalar::from_long(Q, 3);
  d(1, 1) = Scalar::from_rat(Q, Rat(1, 3));
  auto wd = elementary_factor(d);
  CHECK(wd.size() == 4);
  CHECK(recompose(wd, Q, 2) == d);
  SMatrix m = int_matrix(Q, {{2, 3, 1}, {1, 2, 0}, {4, 7, 2}});
  REQUIRE(det(m).is_one());
  CHECK(recompose(elementary_factor(m), Q, 3) == m);
  SMatrix s = int_matrix(Q, {{0, 1}, {-1, 0}});
  CHECK(recompose(elementary_factor(s), Q, 2) == s);
  CHECK_THROWS_AS(elementary_factor(int_matrix(Q, {{2, 0}, {0, 1}})), NotDetOne);
}

TEST_CASE("elementary factorization over a Laurent field") {
  RingPtr F5 = ring_prime_field(5);
  LMatrix g = laurent_identity(F5, 2);
  g(0, 0) = Laurent::t(F5, 2);
  g(0, 1) = L(F5, "1+t");
  g(1, 1) = Laurent::t(F5, -2);
  CHECK(recompose(elementary_factor(g), F5, 2) == g);
  LMatrix d = laurent_diagonal({Laurent::t(F5), Laurent::t(F5, -1)});
  auto w = elementary_factor(d);
  CHECK(w.size() == 4);
  CHECK(recompose(w, F5, 2) == d);
  LMatrix bad = laurent_diagonal({Laurent::t(F5), Laurent::t(F5)});
  CHECK_THROWS_AS(elementary_factor(bad), NotDetOne);
}
