#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adelix/laurent.hpp"
#include "adelix/twodim.hpp"

namespace adelix {

// Formal product of Milnor symbols {a, b}^e. Never normalized: two words
// are compared only through their evaluations.
template <class T>
struct SymbolWord {
  struct Pair {
    T a, b;
    long e = 1;
  };
  std::vector<Pair> pairs;

  SymbolWord() = default;
  SymbolWord(const T& a, const T& b, long e = 1) { pairs.push_back({a, b, e}); }
  SymbolWord& add(const T& a, const T& b, long e = 1) {
    pairs.push_back({a, b, e});
    return *this;
  }
  SymbolWord operator*(const SymbolWord& o) const {
    SymbolWord w = *this;
    w.pairs.insert(w.pairs.end(), o.pairs.begin(), o.pairs.end());
    return w;
  }
  SymbolWord power(long k) const {
    SymbolWord w = *this;
    for (auto& p : w.pairs) p.e *= k;
    return w;
  }
};

using LaurentWord = SymbolWord<Laurent>;
using TwoDimWord = SymbolWord<TwoDim>;

// Tame symbol of one pair over a discretely valued Laurent field F((t)).
Scalar tame_pair(const Laurent& a, const Laurent& b);
// Tame symbol from valuations and leading coefficients.
Scalar tame_from_leading(int va, const Scalar& a0, int vb, const Scalar& b0);
Scalar tame_symbol(const LaurentWord& w);

// Kato residue of a pair in F{{t}}, as an element of F whose unit part is
// known modulo p^n.
Scalar kato_pair(const TwoDim& a, const TwoDim& b, int n);
Scalar kato_res(const TwoDimWord& w, int n);

// Norm from an unramified extension (or finite-field extension) down to the
// prime field or Q_p; a base element is raised to the extension degree.
Scalar norm_k1(const Scalar& a);
Scalar norm_from_base(const Scalar& a, RingPtr extension);

// Decomposition x = p^M u^a Q G used by the residue computation: Q monic
// and distinguished (Q = u^J mod p), G a unit power series.
struct Weierstrass {
  int M = 0;   // p-adic valuation
  int a = 0;   // power of the uniformizer
  Poly Q;      // monic, degree J, over W_n(F_q)
  Laurent G;   // unit in W_n(F_q)[[u]], possibly truncated
  int J() const { return Q.degree(); }
};
Weierstrass weierstrass(const TwoDim& x, int n);

struct RelationReport {
  struct Line {
    std::string name;
    int passed = 0;
    int total = 0;
  };
  std::vector<Line> lines;
  bool ok() const;
  std::string str() const;
};

// Random checks of bimultiplicativity, antisymmetry and the Steinberg
// relations for the tame symbol (over the given residue field) and Kato's
// residue (over Q_p{{t}} with p-adic precision n).
RelationReport symbol_relations_check(RingPtr tame_field, RingPtr kato_field, int n, int samples, std::uint64_t seed);

// Text format: one "[e] (a) , (b)" line per pair.
std::string word_str(const LaurentWord& w);
std::string word_str(const TwoDimWord& w);
LaurentWord parse_laurent_word(RingPtr r, const std::string& text);
TwoDimWord parse_twodim_word(RingPtr field, const std::string& text);

}  // namespace adelix
