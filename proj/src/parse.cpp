#include "adelix/parse.hpp"

#include "adelix/laurent.hpp"
#include "adelix/twodim.hpp"

namespace adelix {

namespace {

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

Laurent parse_sparse(RingPtr r, const std::string& text) {
  size_t close = text.find('}');
  if (close == std::string::npos) throw ParseError("missing '}' in '" + text + "'");
  std::string body = text.substr(1, close - 1);
  std::string tail = strip(text.substr(close + 1));
  int prec = kInfPrec;
  if (!tail.empty()) {
    if (tail.rfind("+O(t^", 0) != 0 || tail.back() != ')') throw ParseError("bad precision tail '" + tail + "'");
    prec = std::stoi(tail.substr(5, tail.size() - 6));
  }
  Laurent acc(r, prec);
  for (auto& item : split_top(body, ',')) {
    std::string it = strip(item);
    if (it.empty()) continue;
    size_t colon = it.find(':');
    if (colon == std::string::npos) throw ParseError("expected exponent:coefficient, got '" + it + "'");
    int e = std::stoi(it.substr(0, colon));
    Scalar c = parse_scalar(r, it.substr(colon + 1));
    acc = acc + Laurent::monomial(c, e, prec);
  }
  return acc;
}

}  // namespace

Laurent parse_laurent(RingPtr r, const std::string& text) {
  std::string s = strip(text);
  if (!s.empty() && s[0] == '{') return parse_sparse(r, s);
  ExprAlgebra<Laurent> A;
  A.number = [r](const Int& n) { return Laurent::constant(Scalar::from_int(r, n)); };
  A.variable = [r](const std::string& v) {
    if (v == "t") return Laurent::t(r);
    if (v == "p" && r->p != 0) return Laurent::constant(Scalar::from_int(r, r->p));
    if (v == "x" && r->degree() > 1) return Laurent::constant(Scalar::generator(r));
    throw ParseError("unknown symbol '" + v + "' in " + r->name);
  };
  A.add = [](const Laurent& a, const Laurent& b) { return a + b; };
  A.sub = [](const Laurent& a, const Laurent& b) { return a - b; };
  A.mul = [](const Laurent& a, const Laurent& b) { return a * b; };
  A.div = [](const Laurent& a, const Laurent& b) { return a * b.inv(); };
  A.neg = [](const Laurent& a) { return -a; };
  A.pow = [](const Laurent& a, long e) { return a.pow(e); };
  return ExprParser<Laurent>(A, s).parse();
}

TwoDim parse_twodim(RingPtr field, const std::string& text) {
  return TwoDim::from_laurent(field, parse_laurent(field, text));
}

}  // namespace adelix
