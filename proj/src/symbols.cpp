#include "adelix/symbols.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "adelix/linalg.hpp"

namespace adelix {

Scalar tame_from_leading(int va, const Scalar& a0, int vb, const Scalar& b0) {
  Scalar r = a0.pow(vb) * b0.pow(-va);
  if ((static_cast<long>(va) * vb) % 2 != 0) r = -r;
  return r;
}

Scalar tame_pair(const Laurent& a, const Laurent& b) {
  if (!a.ring()->is_field()) throw DomainError("tame symbol needs a field of coefficients, got " + a.ring()->name);
  int va = a.valuation(), vb = b.valuation();
  return tame_from_leading(va, a.coeff(va), vb, b.coeff(vb));
}

Scalar tame_symbol(const LaurentWord& w) {
  if (w.pairs.empty()) throw DomainError("empty word has no ring; evaluate as 1");
  RingPtr R = w.pairs[0].a.ring();
  Scalar acc = Scalar::one(R);
  for (auto& p : w.pairs) acc = acc * tame_pair(p.a, p.b).pow(p.e);
  return acc;
}

// ---------------------------------------------------------------------------
// Kato residue

namespace {

constexpr int kNoLoss = kInfPrec;

// Polynomial over A from the stored coefficients of a power series.
Poly series_poly(const Laurent& s) {
  std::vector<Scalar> v;
  for (int e = 0; e <= s.hi(); ++e) v.push_back(s.coeff(e));
  return Poly(s.ring(), std::move(v));
}

// Coefficients of a polynomial over A = W_n that are all divisible by p^k,
// divided by p^k and reduced mod p.
Poly divide_reduce(const Poly& f, int k, RingPtr Fq) {
  Int pk = ipow(Fq->p, k);
  std::vector<Scalar> v;
  for (auto& c : f.coeffs()) {
    std::vector<Int> cc = c.coeffs();
    for (auto& x : cc) {
      if (!mpz_divisible_p(x.get_mpz_t(), pk.get_mpz_t())) throw DomainError("Weierstrass lifting invariant broken");
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
    }
    v.push_back(Scalar::from_coeffs(Fq, cc));
  }
  return Poly(Fq, std::move(v));
}

Poly lift_poly(const Poly& f, RingPtr A) {
  std::vector<Scalar> v;
  for (auto& c : f.coeffs()) v.push_back(Scalar::from_coeffs(A, c.coeffs()));
  return Poly(A, std::move(v));
}

// Multiplication by E on A[u]/(Q), determinant.
Scalar norm_mod(const Poly& Q, const Laurent& E) {
  RingPtr A = Q.ring();
  int J = Q.degree();
  if (J == 0) return Scalar::one(A);
  Poly e = series_poly(E) % Q;
  SMatrix m = zero_matrix(A, J, J);
  Poly row = e;
  for (int i = 0; i < J; ++i) {
    for (int j = 0; j < J; ++j) m(i, j) = row.coeff(j);
    row = row.shift(1) % Q;
  }
  return det(m);
}

int tail_bound(const Laurent& G, int J) {
  if (G.exact() || J == 0) return kNoLoss;
  return G.prec() / J;
}

}  // namespace

Weierstrass weierstrass(const TwoDim& x0, int n) {
  if (x0.relprec() < n)
    throw PrecisionExhausted("residue requested mod p^" + std::to_string(n) + " but entry known to relative precision " +
                             std::to_string(x0.relprec()));
  TwoDim x = x0.with_relprec(n);
  const Laurent& s = x.unit_series();
  RingPtr A = s.ring();
  RingPtr Fq = ring_residue_field(A);
  Weierstrass W;
  W.M = x.pval();
  int lo = s.lo();
  int w = s.valuation();
  int J = w - lo;
  W.a = lo;
  Laurent S = s.shift(-lo);
  if (J == 0) {
    W.Q = Poly::constant(Scalar::one(A));
    W.G = S;
    return W;
  }
  Poly Sp = series_poly(S);
  Poly Sbar = Sp.convert(Fq);
  // Sbar = u^J * Gbar with Gbar(0) != 0
  std::vector<Scalar> gb(Sbar.coeffs().begin() + J, Sbar.coeffs().end());
  Poly Gbar(Fq, gb);
  // Gbar^{-1} mod u^J
  Laurent ginv = Laurent::from_poly(Gbar).inv(J).truncate(J);
  Poly ginvp = series_poly(ginv);
  Poly uJ = Poly::monomial(Scalar::one(A), J);
  Poly Q = uJ, G = lift_poly(Gbar, A);
  for (int k = 1; k < A->m; ++k) {
    Poly e = divide_reduce(Sp - Q * G, k, Fq);
    // dQ = e * Gbar^{-1} mod u^J ; dG = (e - dQ * Gbar) / u^J
    Poly dQ = e * ginvp;
    std::vector<Scalar> dq(dQ.coeffs().begin(), dQ.coeffs().begin() + std::min<int>(J, dQ.degree() + 1));
    dQ = Poly(Fq, dq);
    Poly rest = e - dQ * Gbar;
    for (int i = 0; i < J && i <= rest.degree(); ++i)
      if (!rest.coeff(i).is_zero()) throw DomainError("Weierstrass step not divisible by u^J");
    std::vector<Scalar> dg;
    for (int i = J; i <= rest.degree(); ++i) dg.push_back(rest.coeff(i));
    Poly dG(Fq, dg);
    Scalar pk = Scalar::from_int(A, ipow(A->p, k));
    Q = Q + lift_poly(dQ, A) * pk;
    G = G + lift_poly(dG, A) * pk;
  }
  W.Q = Q;
  W.G = Laurent::from_poly(G);
  if (!S.exact()) W.G = Laurent(A, 0, W.G.coeffs(), S.prec() - J);
  return W;
}

Scalar kato_pair(const TwoDim& x1, const TwoDim& x2, int n) {
  RingPtr F = x1.field();
  if (x2.field() != F) throw DomainError("Kato residue of entries over different fields");
  Weierstrass W1 = weierstrass(x1, n), W2 = weierstrass(x2, n);
  int J1 = W1.J(), J2 = W2.J();
  // truncation of Q_i and of G_i evaluated at the roots of the other Q
  int avail = n;
  if (!W1.G.exact() && J1 > 0) avail = std::min(avail, (W1.G.prec() + J1) / J1);
  if (!W2.G.exact() && J2 > 0) avail = std::min(avail, (W2.G.prec() + J2) / J2);
  avail = std::min({avail, tail_bound(W1.G, J2), tail_bound(W2.G, J1)});
  if (avail < n)
    throw PrecisionExhausted("t-adic window supports the residue only mod p^" + std::to_string(avail) + ", requested " +
                             std::to_string(n));
  long w1 = W1.a + J1, w2 = W2.a + J2;
  Scalar g10 = W1.G.coeff(0), g20 = W2.G.coeff(0);
  Scalar unit = norm_mod(W2.Q, W1.G) * g10.pow(W2.a) * (norm_mod(W1.Q, W2.G) * g20.pow(W1.a)).inv();
  if ((w1 * w2) % 2 != 0) unit = -unit;
  long pexp = static_cast<long>(W1.M) * w2 - static_cast<long>(W2.M) * w1;
  return Scalar::padic(F, static_cast<int>(pexp), unit.coeffs(), n);
}

Scalar kato_res(const TwoDimWord& w, int n) {
  if (w.pairs.empty()) throw DomainError("empty word has no field; evaluate as 1");
  RingPtr F = w.pairs[0].a.field();
  Scalar acc = Scalar::one(F);
  for (auto& p : w.pairs) acc = acc * kato_pair(p.a, p.b, n).pow(p.e);
  return acc;
}

// ---------------------------------------------------------------------------

Scalar norm_k1(const Scalar& a) {
  RingPtr R = a.ring();
  if ((R->kind == RingKind::Galois || R->kind == RingKind::PAdic) && R->degree() > 1) return norm_to_prime(a);
  return a;
}

Scalar norm_from_base(const Scalar& a, RingPtr ext) { return a.pow(ext->degree()); }

// ---------------------------------------------------------------------------

bool RelationReport::ok() const {
  return std::all_of(lines.begin(), lines.end(), [](const Line& l) { return l.passed == l.total; });
}

std::string RelationReport::str() const {
  std::ostringstream os;
  for (auto& l : lines) os << l.name << ": " << l.passed << "/" << l.total << "\n";
  return os.str();
}

namespace {

// Same valuation and unit parts agreeing to the common precision.
bool padic_agree(const Scalar& x, const Scalar& y) {
  if (x.valuation() != y.valuation()) return false;
  int r = std::min(x.relprec(), y.relprec());
  return x.unit_part(r) == y.unit_part(r);
}

}  // namespace

RelationReport symbol_relations_check(RingPtr K, RingPtr F, int n, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RelationReport rep;
  RelationReport::Line bim{"tame bimultiplicative"}, anti{"tame antisymmetric"}, st{"tame {a,1-a}"}, neg{"tame {a,-a}"};
  auto rnd_coeff = [&](RingPtr R, bool nonzero) {
    while (true) {
      Scalar c = R->kind == RingKind::Rationals ? Scalar::from_rat(R, Rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 5)))
                                                : Scalar::from_long(R, static_cast<long>(rng() % 1000));
      if (!nonzero || !c.is_zero()) return c;
    }
  };
  auto rnd_laurent = [&]() {
    int v = static_cast<int>(rng() % 7) - 3;
    int len = 1 + static_cast<int>(rng() % 4);
    std::vector<Scalar> c{rnd_coeff(K, true)};
    for (int i = 1; i < len; ++i) c.push_back(rnd_coeff(K, false));
    return Laurent(K, v, c);
  };
  auto tame1 = [](const Laurent& a, const Laurent& b) { return tame_pair(a, b); };
  Laurent one = Laurent::constant(Scalar::one(K));
  for (int i = 0; i < samples; ++i) {
    Laurent a = rnd_laurent(), b = rnd_laurent(), c = rnd_laurent();
    ++bim.total;
    if (tame1(a * b, c) == tame1(a, c) * tame1(b, c)) ++bim.passed;
    ++anti.total;
    if ((tame1(a, b) * tame1(b, a)).is_one()) ++anti.passed;
    Laurent oma = one - a;
    if (!oma.is_zero()) {
      ++st.total;
      if (tame1(a, oma).is_one()) ++st.passed;
    }
    ++neg.total;
    if (tame1(a, -a).is_one()) ++neg.passed;
  }
  rep.lines = {bim, anti, st, neg};
  if (F == nullptr) return rep;

  RelationReport::Line kb{"kato bimultiplicative"}, ka{"kato antisymmetric"}, ks{"kato {a,1-a}"}, kn{"kato {a,-a}"};
  RingPtr W = ring_integers_mod(F, F->m);
  auto rnd_twodim = [&]() {
    int M = static_cast<int>(rng() % 3) - 1;
    int lo = static_cast<int>(rng() % 5) - 2;
    int len = 1 + static_cast<int>(rng() % 5);
    std::vector<Scalar> c;
    for (int i = 0; i < len; ++i) {
      Int x(static_cast<unsigned long>(rng() % 100000));
      // coefficients below a randomly placed unit are divisible by p
      c.push_back(Scalar::from_int(W, x));
    }
    c[static_cast<size_t>(rng() % len)] = Scalar::from_long(W, 1 + static_cast<long>(rng() % (F->p.get_si() - 1)));
    return TwoDim(F, M, Laurent(W, lo, c));
  };
  TwoDim one2 = TwoDim::from_scalar(Scalar::one(F));
  for (int i = 0; i < samples; ++i) {
    TwoDim a = rnd_twodim(), b = rnd_twodim(), c = rnd_twodim();
    ++kb.total;
    if (padic_agree(kato_pair(a * b, c, n), kato_pair(a, c, n) * kato_pair(b, c, n))) ++kb.passed;
    ++ka.total;
    Scalar prod = kato_pair(a, b, n) * kato_pair(b, a, n);
    if (prod.valuation() == 0 && prod.unit_part(n).is_one()) ++ka.passed;
    try {
      TwoDim oma = one2 - a;
      if (oma.relprec() >= n) {
        ++ks.total;
        Scalar s = kato_pair(a, oma, n);
        if (s.valuation() == 0 && s.unit_part(n).is_one()) ++ks.passed;
      }
    } catch (const PrecisionExhausted&) {
    }
    ++kn.total;
    Scalar s = kato_pair(a, -a, n);
    if (s.valuation() == 0 && s.unit_part(n).is_one()) ++kn.passed;
  }
  rep.lines.insert(rep.lines.end(), {kb, ka, ks, kn});
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

template <class T>
std::string word_str_impl(const SymbolWord<T>& w) {
  std::string out;
  for (auto& p : w.pairs) out += "[" + std::to_string(p.e) + "] (" + p.a.str() + ") , (" + p.b.str() + ")\n";
  return out;
}

// Split "[e] (a) , (b)" into its three parts, honoring nested parentheses.
void split_line(const std::string& line, long& e, std::string& a, std::string& b) {
  size_t lb = line.find('['), rb = line.find(']');
  if (lb == std::string::npos || rb == std::string::npos) throw ParseError("expected '[e]' in '" + line + "'");
  e = std::stol(line.substr(lb + 1, rb - lb - 1));
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (size_t i = rb + 1; i < line.size(); ++i) {
    char c = line[i];
    if (c == '(') {
      if (depth++ == 0) continue;
    } else if (c == ')') {
      if (--depth == 0) {
        parts.push_back(cur);
        cur.clear();
        continue;
      }
    }
    if (depth > 0) cur += c;
  }
  if (parts.size() != 2) throw ParseError("expected two parenthesized entries in '" + line + "'");
  a = parts[0];
  b = parts[1];
}

}  // namespace

std::string word_str(const LaurentWord& w) {
  return word_str_impl(w);
}

std::string word_str(const TwoDimWord& w) {
  return word_str_impl(w);
}

LaurentWord parse_laurent_word(RingPtr r, const std::string& text) {
  LaurentWord w;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    long e;
    std::string a, b;
    split_line(line, e, a, b);
    w.add(parse_laurent(r, a), parse_laurent(r, b), e);
  }
  return w;
}

TwoDimWord parse_twodim_word(RingPtr field, const std::string& text) {
  TwoDimWord w;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    long e;
    std::string a, b;
    split_line(line, e, a, b);
    w.add(parse_twodim(field, a), parse_twodim(field, b), e);
  }
  return w;
}

}  // namespace adelix
