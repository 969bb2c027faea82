#include <random>

#include "adelix/groupalg.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adelix;

namespace {

RingPtr Q() { return ring_rationals(); }

GroupRingElem elem(const FiniteGroup& G, std::vector<std::pair<int, Rat>> terms) {
  GroupRingElem x(G.order(), 0);
  for (auto& [g, c] : terms) x[g] += c;
  return x;
}

GroupRingElem random_elem(std::mt19937_64& rng, const FiniteGroup& G, int h) {
  GroupRingElem x(G.order());
  for (auto& c : x) c = static_cast<long>(rng() % static_cast<unsigned>(2 * h + 1)) - h;
  return x;
}

GroupMatrix random_matrix(std::mt19937_64& rng, const FiniteGroup& G, int k, int h) {
  GroupMatrix m(k, std::vector<GroupRingElem>(k));
  for (auto& row : m)
    for (auto& e : row) e = random_elem(rng, G, h);
  return m;
}

// Trace over Q of z in Q[y]/(mu).
Rat field_trace(const Poly& z, const Poly& mu) {
  Rat tr = 0;
  Poly yj = Poly::constant(Scalar::one(Q()));
  for (int j = 0; j < mu.degree(); ++j) {
    Poly p = (z * yj) % mu;
    if (!p.is_zero()) tr += p.coeff(j).rat();
    yj = (yj * Poly::x(Q())) % mu;
  }
  return tr;
}

// Rational character of a component: g -> Tr_{Z/Q} tr rho(g).
std::vector<Rat> rational_character(const WedderburnComponent& W) {
  std::vector<Rat> chi;
  for (const auto& M : W.rho) {
    Rat s = 0;
    for (int i = 0; i < W.m; ++i) s += field_trace(M[i][i], W.mu);
    chi.push_back(s);
  }
  return chi;
}

GroupRingElem add(const GroupRingElem& a, const GroupRingElem& b) {
  GroupRingElem c = a;
  for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

Poly qconst(Rat q) { return Poly::constant(Scalar::from_rat(Q(), q)); }

GroupRingOver<Laurent> scalar_entry(const FiniteGroup& G, const Laurent& c) {
  GroupRingOver<Laurent> x(G.order(), Laurent(c.ring()));
  x[G.identity] = c;
  return x;
}

}  // namespace

TEST_CASE("finite groups from tables") {
  auto C4 = FiniteGroup::cyclic(4);
  CHECK(C4.order() == 4);
  CHECK(C4.is_abelian());
  CHECK(C4.inverse(1) == 3);
  auto S3 = FiniteGroup::symmetric3();
  CHECK_FALSE(S3.is_abelian());
  CHECK(S3.conjugacy_classes().size() == 3);
  CHECK(FiniteGroup::quaternion8().conjugacy_classes().size() == 5);
  CHECK(FiniteGroup::dihedral(4).conjugacy_classes().size() == 5);
  CHECK(FiniteGroup::builtin("C_6").order() == 6);
  CHECK(FiniteGroup::builtin("q8").name == "Q8");
  CHECK_THROWS_AS(FiniteGroup::builtin("A5"), ParseError);
  // not associative: a Latin square that is no group
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), DomainError);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1},
                                           {4, 3, 1, 2, 0}}),
                  DomainError);
  CHECK_THROWS_AS(FiniteGroup::from_table({{1, 0}, {1, 0}}), DomainError);
}

TEST_CASE("Wedderburn decomposition of C2") {
  auto A = wedderburn(FiniteGroup::cyclic(2));
  REQUIRE(A.components.size() == 2);
  CHECK(A.str() == "Q[C2] = Q x Q");
  CHECK(A.components[0].idempotent == GroupRingElem{Rat(1, 2), Rat(1, 2)});
  CHECK(A.components[1].idempotent == GroupRingElem{Rat(1, 2), Rat(-1, 2)});
}

TEST_CASE("Wedderburn decomposition of S3 and Q8") {
  auto A = wedderburn(FiniteGroup::symmetric3());
  CHECK(A.dimensions() == std::vector<int>{1, 1, 4});
  CHECK(A.str() == "Q[S3] = Q x Q x M_2(Q)");
  // characters against permutation counts: trivial, sign, fixed points - 1
  const auto perms = oracle::s3_perms();
  for (int g = 0; g < 6; ++g) {
    int fixed = 0;
    for (int i = 0; i < 3; ++i) fixed += perms[g][i] == i;
    CHECK(rational_character(A.components[0])[g] == 1);
    CHECK(rational_character(A.components[1])[g] == oracle::perm_sign(perms[g]));
    CHECK(rational_character(A.components[2])[g] == fixed - 1);
  }
  CHECK_THROWS_AS(wedderburn(FiniteGroup::quaternion8()), DoesNotSplit);
  CHECK(wedderburn(FiniteGroup::dihedral(4)).dimensions() == std::vector<int>{1, 1, 1, 1, 4});
  // M_2 over Q(sqrt 5) is outside the supported range
  CHECK_THROWS_AS(wedderburn(FiniteGroup::dihedral(5)), DomainError);
}

TEST_CASE("cyclic groups decompose into cyclotomic fields") {
  for (int n : {1, 3, 4, 5, 6, 8, 9, 12}) {
    auto A = wedderburn(FiniteGroup::cyclic(n));
    std::vector<std::vector<Rat>> got, want;
    for (const auto& W : A.components) {
      CHECK(W.m == 1);
      got.push_back(rational_character(W));
    }
    for (long d = 1; d <= n; ++d) {
      if (n % d) continue;
      std::vector<Rat> chi;
      for (long k = 0; k < n; ++k) chi.push_back(oracle::ramanujan_sum(d, k));
      want.push_back(chi);
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK_MESSAGE(got == want, "C" << n);
  }
  CHECK(wedderburn(FiniteGroup::cyclic(5)).components[1].mu.str("y") == "y^4+y^3+y^2+y+1");
}

TEST_CASE("decomposition invariants") {
  for (std::string name : {"C1", "C2", "C6", "C7", "C10", "S3", "D4", "D6"}) {
    INFO(name);
    auto G = FiniteGroup::builtin(name);
    auto A = wedderburn(G);
    int total = 0;
    for (int d : A.dimensions()) total += d;
    CHECK(total == G.order());
    // central orthogonal idempotents summing to 1
    GroupRingElem sum(G.order(), 0);
    for (size_t i = 0; i < A.components.size(); ++i) {
      const auto& e = A.components[i].idempotent;
      CHECK(group_ring_mul(G, e, e) == e);
      for (int g = 0; g < G.order(); ++g) {
        GroupRingElem x = elem(G, {{g, 1}});
        CHECK(group_ring_mul(G, x, e) == group_ring_mul(G, e, x));
      }
      for (size_t j = 0; j < i; ++j)
        CHECK(group_ring_mul(G, e, A.components[j].idempotent) == GroupRingElem(G.order(), 0));
      sum = add(sum, e);
    }
    CHECK(sum == elem(G, {{G.identity, 1}}));
    // the regular character is |G| at the identity and 0 elsewhere
    for (int g = 0; g < G.order(); ++g) {
      Rat reg = 0;
      for (const auto& W : A.components) reg += W.m * rational_character(W)[g];
      CHECK(reg == (g == G.identity ? G.order() : 0));
    }
    // projections are ring homomorphisms on random elements
    std::mt19937_64 rng(std::hash<std::string>{}(name));
    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_elem(rng, G, 3), y = random_elem(rng, G, 3);
      for (size_t i = 0; i < A.components.size(); ++i) {
        const auto& W = A.components[i];
        auto px = project(A, static_cast<int>(i), x), py = project(A, static_cast<int>(i), y);
        auto pxy = project(A, static_cast<int>(i), group_ring_mul(G, x, y));
        for (int r = 0; r < W.m; ++r)
          for (int c = 0; c < W.m; ++c) {
            Poly s(Q());
            for (int k = 0; k < W.m; ++k) s = s + px[r][k] * py[k][c];
            s = s.is_zero() ? s : s % W.mu;
            CHECK(s == pxy[r][c]);
          }
      }
    }
  }
}

TEST_CASE("reduced norm over Q[C2]") {
  auto G = FiniteGroup::cyclic(2);
  auto A = wedderburn(G);
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      if (a == b || a == -b) {
        CHECK_THROWS_AS(det_map({{elem(G, {{0, a}, {1, b}})}}, A), NotInvertible);
        continue;
      }
      auto d = det_map({{elem(G, {{0, a}, {1, b}})}}, A);
      CHECK(d.values == std::vector<Poly>{qconst(a + b), qconst(a - b)});
    }
  GroupMatrix id = {{elem(G, {{0, 1}}), elem(G, {})}, {elem(G, {}), elem(G, {{0, 1}})}};
  CHECK(det_map(id, A).values == std::vector<Poly>{qconst(1), qconst(1)});
  CHECK(det_map({{elem(G, {{0, 2}, {1, 1}})}}, A).str() == "(3, 1)");
}

TEST_CASE("reduced norm over Q[S3] against the permutation representation") {
  auto G = FiniteGroup::symmetric3();
  auto A = wedderburn(G);
  std::mt19937_64 rng(33);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    int k = 1 + trial % 2;
    auto x = random_matrix(rng, G, k, 2);
    std::vector<std::vector<std::vector<mpq_class>>> xo(k, std::vector<std::vector<mpq_class>>(k));
    for (int r = 0; r < k; ++r)
      for (int s = 0; s < k; ++s) xo[r][s] = x[r][s];
    auto want = oracle::s3_dets(xo);
    if (std::any_of(want.begin(), want.end(), [](const mpq_class& q) { return q == 0; })) {
      CHECK_THROWS_AS(det_map(x, A), NotInvertible);
      continue;
    }
    auto d = det_map(x, A);
    for (int i = 0; i < 3; ++i) CHECK(d.values[i] == qconst(want[i]));
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("reduced norm is multiplicative and kills commutators") {
  std::mt19937_64 rng(7);
  for (std::string name : {"C2", "C3", "S3", "D4"}) {
    INFO(name);
    auto G = FiniteGroup::builtin(name);
    auto A = wedderburn(G);
    auto mulz = [&](const DetVector& a, const DetVector& b) {
      DetVector c;
      for (size_t i = 0; i < a.values.size(); ++i) c.values.push_back((a.values[i] * b.values[i]) % A.components[i].mu);
      return c;
    };
    int done = 0;
    for (int trial = 0; trial < 40 && done < 10; ++trial) {
      auto x = random_matrix(rng, G, 2, 2), y = random_matrix(rng, G, 2, 2);
      DetVector dx, dy;
      try {
        dx = det_map(x, A);
        dy = det_map(y, A);
      } catch (const NotInvertible&) {
        continue;
      }
      auto xy = group_matrix_mul(G, x, y), yx = group_matrix_mul(G, y, x);
      CHECK(det_map(xy, A) == mulz(dx, dy));
      CHECK(det_map(xy, A) == det_map(yx, A));
      ++done;
    }
    CHECK(done == 10);
    // elementary matrices have trivial determinant
    auto r = random_elem(rng, G, 3);
    GroupMatrix e = {{elem(G, {{G.identity, 1}}), r}, {elem(G, {}), elem(G, {{G.identity, 1}})}};
    for (const auto& v : det_map(e, A).values) CHECK(v == qconst(1));
  }
}

TEST_CASE("reduced norm over a cyclotomic center") {
  auto G = FiniteGroup::cyclic(3);
  auto A = wedderburn(G);
  REQUIRE(A.components[1].mu.str("y") == "y^2+y+1");
  // 1 - sigma: augmentation 0 is singular; in Q(zeta_3) it is 1 - y
  CHECK_THROWS_AS(det_map({{elem(G, {{0, 1}, {1, -1}})}}, A), NotInvertible);
  auto d = det_map({{elem(G, {{0, 2}, {1, -1}})}}, A);
  CHECK(d.values[0] == qconst(1));
  // 2 - y in Q(y), y = image of the chosen generator; its norm is 7
  CHECK(field_trace(d.values[1], A.components[1].mu) == 5);
  Poly conj = Poly::from_ints(Q(), {3, 1});  // 2 - y^2 = 2 + 1 + y mod y^2+y+1
  CHECK((d.values[1] * conj) % A.components[1].mu == qconst(7));
}

TEST_CASE("componentwise symbols over F5((t))[C2]") {
  auto G = FiniteGroup::cyclic(2);
  auto A = wedderburn(G);
  RingPtr F5 = ring_prime_field(Int(5));
  Laurent t = Laurent::t(F5);
  auto v = morita_tame(GroupWord(scalar_entry(G, t), scalar_entry(G, t)), A);
  REQUIRE(v.size() == 2);
  CHECK(v[0].integer() == 4);
  CHECK(v[1].integer() == 4);

  // scalar entries give the scalar symbol in every component
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Laurent a = Laurent::from_ints(F5, static_cast<int>(rng() % 5) - 2, {1 + static_cast<long>(rng() % 4), static_cast<long>(rng() % 5)});
    Laurent b = Laurent::from_ints(F5, static_cast<int>(rng() % 5) - 2, {1 + static_cast<long>(rng() % 4), static_cast<long>(rng() % 5)});
    auto w = morita_tame(GroupWord(scalar_entry(G, a), scalar_entry(G, b)), A);
    for (const auto& x : w) CHECK(x == tame_pair(a, b));
  }

  // a + b sigma projects to a + b and a - b
  GroupRingOver<Laurent> u = {Laurent::from_ints(F5, 0, {2}), Laurent::from_ints(F5, 1, {1})};  // 2 + t sigma
  auto w = morita_tame(GroupWord(u, scalar_entry(G, t)), A);
  CHECK(w[0] == tame_pair(Laurent::from_ints(F5, 0, {2, 1}), t));
  CHECK(w[1] == tame_pair(Laurent::from_ints(F5, 0, {2, -1}), t));

  // products of words multiply componentwise
  GroupWord w1(u, scalar_entry(G, t)), w2(scalar_entry(G, t), scalar_entry(G, t.pow(3)), 2);
  auto p = morita_tame(w1 * w2, A), p1 = morita_tame(w1, A), p2 = morita_tame(w2, A);
  for (int i = 0; i < 2; ++i) CHECK(p[i] == p1[i] * p2[i]);

  GroupRingOver<Laurent> z = {Laurent::from_ints(F5, 0, {1}), Laurent::from_ints(F5, 0, {1})};
  CHECK_THROWS_AS(morita_tame(GroupWord(z, scalar_entry(G, t)), A), NotInvertible);
}

TEST_CASE("componentwise symbols with a matrix component") {
  auto G = FiniteGroup::symmetric3();
  auto A = wedderburn(G);
  RingPtr F7 = ring_prime_field(Int(7));
  Laurent t = Laurent::t(F7);
  Laurent c = Laurent::from_ints(F7, 0, {3, 1});
  auto v = morita_tame(GroupWord(scalar_entry(G, t), scalar_entry(G, c)), A);
  // scalars embed diagonally, so the two-dimensional block sees the square
  CHECK(v[0] == tame_pair(t, c));
  CHECK(v[1] == tame_pair(t, c));
  CHECK(v[2] == tame_pair(t, c).pow(2));
  // a transposition against a scalar: det is -1 in the block
  GroupRingOver<Laurent> tau(6, Laurent(F7));
  tau[1] = Laurent::from_ints(F7, 0, {1});  // (0 2 1) in lexicographic order: a transposition
  auto w = morita_tame(GroupWord(tau, scalar_entry(G, t)), A);
  CHECK(w[0] == tame_pair(Laurent::from_ints(F7, 0, {1}), t));
  CHECK(w[1].integer() == 6);
  CHECK(w[2].integer() == 6);
  GroupRingOver<Laurent> rot(6, Laurent(F7));
  rot[3] = t;
  CHECK_THROWS_AS(morita_tame(GroupWord(tau, rot), A), DomainError);
}

TEST_CASE("componentwise Kato residues over Q5{{t}}[C2]") {
  auto G = FiniteGroup::cyclic(2);
  auto A = wedderburn(G);
  RingPtr Q5 = ring_padic(Int(5), 6);
  Laurent t = Laurent::t(Q5);
  GroupRingOver<Laurent> u = {Laurent::from_ints(Q5, 0, {3}), Laurent::from_ints(Q5, 0, {5})};  // 3 + 5 sigma
  auto v = morita_kato(GroupWord(u, scalar_entry(G, t)), A, 4);
  CHECK(v[0].congruent(Scalar::from_long(Q5, 8), 4));
  CHECK(v[1].congruent(Scalar::from_long(Q5, -2), 4));
  auto w = morita_kato(GroupWord(scalar_entry(G, Laurent::from_ints(Q5, 0, {5})), scalar_entry(G, t)), A, 4);
  for (const auto& x : w) {
    CHECK(x.valuation() == 1);
    CHECK(x.congruent(Scalar::from_long(Q5, 5), 4));
  }
}

TEST_CASE("equivariant first Chern idele") {
  auto G = FiniteGroup::cyclic(2);
  auto A = wedderburn(G);
  const auto& ep = A.components[0].idempotent;
  const auto& em = A.components[1].idempotent;
  Laurent t = Laurent::t(Q());
  // lambda = t e+ + t^2 e-
  GroupRingOver<Laurent> lam(2, Laurent(Q()));
  for (int g = 0; g < 2; ++g) lam[g] = t * Scalar::from_rat(Q(), ep[g]) + t.pow(2) * Scalar::from_rat(Q(), em[g]);
  auto c = equivariant_c1(A, {{lam}});
  REQUIRE(c.size() == 2);
  RingPtr Zr = ring_integers();
  CHECK(c[0].finite_chart == parse_ratfun(Zr, "t"));
  CHECK(c[1].finite_chart == parse_ratfun(Zr, "t^2"));
  CHECK(c[0].divisor().at(Curve::horizontal(Poly::from_ints(Zr, {0, 1}))) == 1);
  CHECK(c[1].divisor().at(Curve::horizontal(Poly::from_ints(Zr, {0, 1}))) == 2);

  // a generic change of basis by a constant unit of Q[C2] keeps each class
  GroupRingOver<Laurent> u = {Laurent::from_ints(Q(), 0, {3}), Laurent::from_ints(Q(), 0, {1})};  // 3 + sigma
  std::vector<BasisChoice> bases(2);
  for (int i = 0; i < 2; ++i) bases[i].generic = project(A, i, LaurentGroupMatrix{{u}});
  auto moved = equivariant_c1(A, {{lam}}, bases);
  for (int i = 0; i < 2; ++i) CHECK(same_c1_class(moved[i], c[i]).passed);
  // the two components are in different classes
  CHECK_FALSE(same_c1_class(c[0], c[1]).passed);
}
