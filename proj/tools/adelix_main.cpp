#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "adelix/groupalg.hpp"
#include "adelix/loopext.hpp"
#include "adelix/surface.hpp"

using namespace adelix;
using json = nlohmann::ordered_json;

namespace {

// Malformed input that passed the argument parser.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int precision = 4;
  int window = 0;
  std::uint64_t seed = 1;
  std::string json_out;

  std::string field = "Q((t))";
  std::vector<std::string> pairs;
  std::string word;
  int samples = 20;

  std::string f, g, prime, point, curve, eta1, eta2;
  std::string L, M, divisor;
  long move = 6;

  std::string file, matrix, group, table;
};

struct Result {
  json out;
  bool passed = true;
};

// "F5((t))", "F_7((t))", "Q((t))" for Laurent fields; "Q5{{t}}" for Q_p{{t}}.
struct FieldSpec {
  RingPtr ring = nullptr;
  bool two_dim = false;
};

Int parse_prime(const std::string& s, const std::string& what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) throw SchemaError("bad prime in " + what);
  Int p(s);
  if (!is_probable_prime(p)) throw SchemaError(s + " is not prime in " + what);
  return p;
}

FieldSpec parse_field(const std::string& text, int precision) {
  std::string s;
  for (char c : text)
    if (c != '_' && c != ' ') s += c;
  auto strip = [&](const std::string& suffix) {
    if (s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
      s.resize(s.size() - suffix.size());
      return true;
    }
    return false;
  };
  if (strip("{{t}}")) {
    if (s.size() < 2 || s[0] != 'Q') throw SchemaError("two-dimensional field must be Qp{{t}}: " + text);
    return {ring_padic(parse_prime(s.substr(1), text), precision + 2), true};
  }
  strip("((t))");
  if (s == "Q") return {ring_rationals(), false};
  if (s.size() >= 2 && s[0] == 'F') return {ring_prime_field(parse_prime(s.substr(1), text)), false};
  throw SchemaError("unknown field '" + text + "'");
}

// Coefficient ring of a bundle file: "Z", "Q" or "F<p>".
RingPtr parse_base(const std::string& s) {
  if (s == "Z") return ring_integers();
  if (s == "Q") return ring_rationals();
  if (s.size() >= 2 && (s[0] == 'F')) return ring_prime_field(parse_prime(s.substr(s[1] == '_' ? 2 : 1), s));
  throw SchemaError("unknown base ring '" + s + "'");
}

// Split "a, b" at the comma outside parentheses.
std::pair<std::string, std::string> split_pair(const std::string& s) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  throw SchemaError("pair '" + s + "' needs two comma-separated entries");
}

template <class Word, class Parse, class ParseWord>
Word build_word(const Options& o, Parse parse, ParseWord parse_word) {
  Word w;
  if (!o.word.empty()) w = parse_word(o.word);
  for (const auto& p : o.pairs) {
    auto [a, b] = split_pair(p);
    w.add(parse(a), parse(b));
  }
  if (w.pairs.empty()) throw SchemaError("no symbol given (use --pair or --word)");
  return w;
}

LaurentWord laurent_word(const Options& o, RingPtr r) {
  return build_word<LaurentWord>(
      o, [&](const std::string& s) { return parse_laurent(r, s); },
      [&](const std::string& s) { return parse_laurent_word(r, s); });
}

TwoDimWord twodim_word(const Options& o, RingPtr r) {
  return build_word<TwoDimWord>(
      o, [&](const std::string& s) { return parse_twodim(r, s); },
      [&](const std::string& s) { return parse_twodim_word(r, s); });
}

json word_echo(const Options& o) {
  json pairs = json::array();
  for (const auto& p : o.pairs) pairs.push_back(p);
  json in = {{"field", o.field}};
  if (!o.word.empty()) in["word"] = o.word;
  in["pairs"] = pairs;
  return in;
}

Curve parse_curve(const std::string& text) {
  auto D = DivisorLB::parse(text);
  if (D.parts.size() != 1 || D.parts[0].second != 1) throw SchemaError("'" + text + "' is not a single curve");
  return D.parts[0].first;
}

RatFun parse_fn(const std::string& text, const std::string& what, RingPtr base = ring_integers()) {
  if (text.empty()) throw SchemaError("missing --" + what);
  return parse_ratfun(base, text);
}

json idele_json(const IdeleClass& x) {
  json j = json::object();
  for (const auto& [p, v] : x.comps) j[p.get_str()] = v.str();
  return j;
}

json reciprocity_json(const ReciprocityReport& r) {
  json parts = json::array();
  for (const auto& c : r.parts) parts.push_back({{"locus", c.locus}, {"value", c.value.str()}});
  return {{"kind", r.kind},
          {"product", r.product.str()},
          {"verdict", r.passed ? "pass" : "fail"},
          {"precision", r.precision},
          {"parts", parts}};
}

json read_json_input(const Options& o) {
  if (!o.matrix.empty()) return json::parse(o.matrix);
  if (o.file.empty()) throw SchemaError("give --file or --matrix");
  std::ifstream in(o.file);
  if (!in) throw SchemaError("cannot read " + o.file);
  return json::parse(in);
}

// {"field": "Q", "g": [["t^-2"]]}; entries are Laurent polynomials in t.
HorrocksBundle bundle_from(const json& doc) {
  if (!doc.is_object() || !doc.contains("g")) throw SchemaError("bundle document needs a \"g\" matrix");
  RingPtr base = parse_base(doc.value("field", std::string("Q")));
  const json& rows = doc["g"];
  if (!rows.is_array() || rows.empty()) throw SchemaError("\"g\" must be a nonempty array of rows");
  const int n = static_cast<int>(rows.size());
  LMatrix g(n, n, Laurent(base));
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) throw SchemaError("\"g\" must be square");
    for (int j = 0; j < n; ++j) {
      const json& e = rows[i][j];
      std::string s = e.is_string() ? e.get<std::string>() : e.dump();
      g(i, j) = parse_laurent(base, s);
    }
  }
  return HorrocksBundle::from_matrix(g);
}

json scalars_json(const std::vector<Scalar>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

FiniteGroup group_from(const Options& o) {
  if (!o.table.empty()) {
    std::ifstream in(o.table);
    if (!in) throw SchemaError("cannot read " + o.table);
    json doc = json::parse(in);
    const json& t = doc.is_object() ? doc.at("table") : doc;
    std::string name = doc.is_object() ? doc.value("name", std::string("G")) : "G";
    return FiniteGroup::from_table(t.get<std::vector<std::vector<int>>>(), name);
  }
  if (o.group.empty()) throw SchemaError("give --group or --table");
  return FiniteGroup::builtin(o.group);
}

Rat parse_rat(const json& e) {
  std::string s = e.is_string() ? e.get<std::string>() : e.dump();
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw SchemaError("bad rational '" + s + "'");
  }
}

// ---------------------------------------------------------------------------

Result cmd_symbol_tame(const Options& o) {
  FieldSpec F = parse_field(o.field, o.precision);
  if (F.two_dim) throw SchemaError("symbol tame needs a Laurent field F((t))");
  auto w = laurent_word(o, F.ring);
  return {{{"value", tame_symbol(w).str()}, {"input", word_echo(o)}}};
}

Result cmd_symbol_res(const Options& o) {
  FieldSpec F = parse_field(o.field, o.precision);
  if (!F.two_dim) throw SchemaError("symbol res needs a field Qp{{t}}");
  auto w = twodim_word(o, F.ring);
  json in = word_echo(o);
  return {{{"value", kato_res(w, o.precision).str()}, {"precision", o.precision}, {"input", in}}};
}

Result cmd_symbol_relations(const Options& o) {
  FieldSpec F = parse_field(o.field, o.precision);
  if (F.two_dim) throw SchemaError("symbol relations takes the tame field F((t))");
  auto rep = symbol_relations_check(F.ring, ring_padic(F.ring->p == 0 ? Int(5) : F.ring->p, o.precision + 2),
                                    o.precision, o.samples, o.seed);
  json lines = json::array();
  for (const auto& l : rep.lines) lines.push_back({{"name", l.name}, {"passed", l.passed}, {"total", l.total}});
  return {{{"verdict", rep.ok() ? "pass" : "fail"}, {"checks", lines}, {"seed", o.seed}}, rep.ok()};
}

Result cmd_boundary(const Options& o) {
  FieldSpec F = parse_field(o.field, o.precision);
  json in = word_echo(o);
  if (F.two_dim) {
    auto w = twodim_word(o, F.ring);
    Scalar b = boundary_padic(w, o.precision);
    Scalar k = kato_res(w, o.precision);
    bool ok = (b * k).congruent(Scalar::one(F.ring), o.precision);
    return {{{"value", b.str()},
             {"kato_res", k.str()},
             {"verdict", ok ? "pass" : "fail"},
             {"precision", o.precision},
             {"input", in}},
            ok};
  }
  auto w = laurent_word(o, F.ring);
  Scalar b = boundary(w), t = tame_symbol(w);
  bool ok = (b * t).is_one();
  return {{{"value", b.str()}, {"tame_symbol", t.str()}, {"verdict", ok ? "pass" : "fail"}, {"input", in}}, ok};
}

Result cmd_reciprocity(const Options& o, const std::string& kind) {
  ReciprocityReport r;
  json in = {{"f", o.f}, {"g", o.g}};
  if (kind == "vertical") {
    Int p = parse_prime(o.prime, "--prime");
    r = reciprocity_vertical(parse_fn(o.f, "f"), parse_fn(o.g, "g"), p, o.precision);
    in["prime"] = o.prime;
  } else if (kind == "point") {
    if (o.point.empty()) throw SchemaError("missing --point");
    r = reciprocity_point(parse_fn(o.f, "f"), parse_fn(o.g, "g"), ClosedPoint::parse(o.point), o.precision);
    in["point"] = o.point;
  } else if (kind == "horizontal") {
    if (o.curve.empty()) throw SchemaError("missing --curve");
    r = reciprocity_horizontal(parse_fn(o.f, "f"), parse_fn(o.g, "g"), parse_curve(o.curve), o.precision);
    in["curve"] = o.curve;
  } else {
    FieldSpec F = parse_field(o.field, o.precision);
    if (F.two_dim || F.ring->p == 0) throw SchemaError("weil reciprocity needs --field Fp");
    r = weil_reciprocity(parse_fn(o.f, "f", F.ring), parse_fn(o.g, "g", F.ring));
    in["field"] = o.field;
  }
  json out = reciprocity_json(r);
  out["input"] = in;
  return {out, r.passed};
}

Result cmd_bundle(const Options& o, const std::string& kind) {
  json doc = read_json_input(o);
  HorrocksBundle B = bundle_from(doc);
  json out;
  bool ok = true;
  if (kind == "cohomology") {
    auto c = cech_cohomology(B, o.window);
    out = {{"h0", c.h0.rank},
           {"h1", c.h1.rank},
           {"euler", c.euler},
           {"h0_torsion", scalars_json(c.h0.torsion)},
           {"h1_torsion", scalars_json(c.h1.torsion)},
           {"window", c.window}};
  } else if (kind == "split") {
    auto s = birkhoff_split(B);
    LMatrix D = laurent_identity(B.base, B.rank);
    for (int i = 0; i < B.rank; ++i) D(i, i) = Laurent::t(B.base, s.type[i]);
    ok = s.A * D * s.C == B.g;
    auto [h0, h1] = split_cohomology(s.type);
    out = {{"type", s.type}, {"recomposed", ok}, {"h0", h0}, {"h1", h1}, {"verdict", ok ? "pass" : "fail"}};
  } else {
    out = {{"degree", bhs_degree(B)}, {"rank", B.rank}};
  }
  out["input"] = doc;
  return {out, ok};
}

Result cmd_pair(const Options& o) {
  auto L = DivisorLB::parse(o.L), M = DivisorLB::parse(o.M);
  auto z = chern_pair(L, M);
  auto x = pushdown(z, o.precision);
  json comps = json::array();
  for (const auto& c : z.comps)
    comps.push_back({{"eta1", c.eta1.str()}, {"eta2", c.eta2.str()}, {"a", c.a.str()}, {"b", c.b.str()}, {"e", c.e}});
  bool ok = check_witnesses(z);
  return {{{"idele", idele_json(x)},
           {"witnesses", ok ? "pass" : "fail"},
           {"precision", o.precision},
           {"cocycle", comps},
           {"input", {{"L", o.L}, {"M", o.M}}}},
          ok};
}

Result cmd_pushdown(const Options& o) {
  if (o.eta1.empty() || o.eta2.empty()) throw SchemaError("give --eta1 and --eta2");
  Scalar v = local_pushdown(parse_curve(o.eta1), ClosedPoint::parse(o.eta2), parse_fn(o.f, "f"), parse_fn(o.g, "g"),
                            o.precision);
  return {{{"value", v.str()},
           {"precision", o.precision},
           {"input", {{"eta1", o.eta1}, {"eta2", o.eta2}, {"f", o.f}, {"g", o.g}}}}};
}

Result cmd_deligne(const Options& o) {
  auto r = deligne_compare(DivisorLB::parse(o.L), DivisorLB::parse(o.M), o.precision);
  json checked = json::array();
  for (const auto& p : r.unit_checked) checked.push_back(p.get_str());
  return {{{"pairing", idele_json(r.pairing_side)},
           {"norm", idele_json(r.norm_side)},
           {"norm_value", r.norm_value.str()},
           {"unit_checked", checked},
           {"verdict", r.passed ? "pass" : "fail"},
           {"precision", o.precision},
           {"input", {{"L", o.L}, {"M", o.M}}}},
          r.passed};
}

Result cmd_rr(const Options& o) {
  if (o.divisor.empty()) throw SchemaError("missing --divisor");
  auto r = rr_check(DivisorLB::parse(o.divisor), o.precision, o.move);
  return {{{"lhs", r.lhs_trivial ? "trivial" : "nontrivial"},
           {"rhs", r.rhs_membership.passed ? "trivial" : "nontrivial"},
           {"verdict", r.passed ? "pass" : "fail"},
           {"rhs_idele", idele_json(r.rhs)},
           {"rhs_candidate", r.rhs_membership.candidate.str()},
           {"h0_L", r.lhs_L.h0.rank},
           {"h1_L", r.lhs_L.h1.rank},
           {"precision", r.precision},
           {"input", {{"divisor", o.divisor}, {"move", o.move}}}},
          r.passed};
}

Result cmd_group_wedderburn(const Options& o) {
  auto G = group_from(o);
  auto A = wedderburn(G);
  json comps = json::array();
  for (const auto& W : A.components) {
    json e = json::array();
    for (const auto& c : W.idempotent) e.push_back(c.get_str());
    comps.push_back({{"m", W.m}, {"center", W.center_degree() == 1 ? "Q" : W.mu.str("y")}, {"dimension", W.dimension()},
                     {"idempotent", e}});
  }
  return {{{"dimensions", A.dimensions()},
           {"components", comps},
           {"decomposition", A.str()},
           {"input", {{"group", G.name}, {"order", G.order()}}}}};
}

// Matrix over Q[G]: rows of entries, each entry a list of |G| coefficients in
// the group basis (table order).
Result cmd_group_det(const Options& o) {
  auto G = group_from(o);
  auto A = wedderburn(G);
  if (o.matrix.empty()) throw SchemaError("missing --matrix");
  json doc = json::parse(o.matrix);
  if (!doc.is_array() || doc.empty()) throw SchemaError("--matrix must be a nonempty array of rows");
  GroupMatrix x;
  for (const auto& row : doc) {
    if (!row.is_array() || row.size() != doc.size()) throw SchemaError("--matrix must be square");
    std::vector<GroupRingElem> r;
    for (const auto& e : row) {
      if (!e.is_array() || static_cast<int>(e.size()) != G.order())
        throw SchemaError("each entry needs " + std::to_string(G.order()) + " coefficients");
      GroupRingElem c;
      for (const auto& q : e) c.push_back(parse_rat(q));
      r.push_back(c);
    }
    x.push_back(r);
  }
  auto d = det_map(x, A);
  json vals = json::array(), centers = json::array();
  for (size_t i = 0; i < d.values.size(); ++i) {
    vals.push_back(d.values[i].str("y"));
    const auto& W = A.components[i];
    centers.push_back(W.center_degree() == 1 ? "Q" : W.mu.str("y"));
  }
  return {{{"values", vals}, {"centers", centers}, {"input", {{"group", G.name}, {"matrix", doc}}}}};
}

void emit(const json& j, const Options& o) {
  std::string s = j.dump() + "\n";
  if (o.json_out.empty()) {
    std::cout << s;
    return;
  }
  std::ofstream f(o.json_out);
  if (!f) throw SchemaError("cannot write " + o.json_out);
  f << s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adelic symbols, bundles and reciprocity on P^1 over Z"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--precision", o.precision, "p-adic precision m")->check(CLI::Range(1, 64));
  app.add_option("--window", o.window, "Laurent window for cohomology (0 chooses it)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "seed for randomized checks");
  app.add_option("--json-out", o.json_out, "write the report to this file");

  std::function<Result()> job;
  auto words = [&](CLI::App* s) {
    s->add_option("--field", o.field, "F5((t)), Q((t)) or Q5{{t}}");
    s->add_option("--pair", o.pairs, "entries \"a,b\" (repeatable)");
    s->add_option("--word", o.word, "word text, one \"[e] (a) , (b)\" per line");
  };

  auto* symbol = app.add_subcommand("symbol", "tame symbol or Kato residue")->require_subcommand(1);
  auto* tame = symbol->add_subcommand("tame", "tame symbol over F((t))");
  words(tame);
  tame->callback([&] { job = [&] { return cmd_symbol_tame(o); }; });
  auto* res = symbol->add_subcommand("res", "Kato residue over Qp{{t}}");
  words(res);
  res->callback([&] { job = [&] { return cmd_symbol_res(o); }; });
  auto* rel = symbol->add_subcommand("relations", "random relation checks");
  rel->add_option("--field", o.field, "tame field");
  rel->add_option("--samples", o.samples, "samples per relation");
  rel->callback([&] { job = [&] { return cmd_symbol_relations(o); }; });

  auto* bnd = app.add_subcommand("boundary", "boundary map through the central extension");
  words(bnd);
  bnd->callback([&] { job = [&] { return cmd_boundary(o); }; });

  auto* rec = app.add_subcommand("reciprocity", "reciprocity laws")->require_subcommand(1);
  for (std::string kind : {"vertical", "point", "horizontal", "weil"}) {
    auto* s = rec->add_subcommand(kind, kind + " reciprocity");
    s->add_option("--f", o.f, "rational function f")->required();
    s->add_option("--g", o.g, "rational function g")->required();
    if (kind == "vertical") s->add_option("--prime", o.prime, "fiber prime")->required();
    if (kind == "point") s->add_option("--point", o.point, "closed point, e.g. \"(5, t)\"")->required();
    if (kind == "horizontal") s->add_option("--curve", o.curve, "horizontal curve, e.g. H[t^2+1]")->required();
    if (kind == "weil") s->add_option("--field", o.field, "prime field Fp")->required();
    s->callback([&, kind] { job = [&, kind] { return cmd_reciprocity(o, kind); }; });
  }

  auto* bundle = app.add_subcommand("bundle", "Horrocks bundles on P^1")->require_subcommand(1);
  for (std::string kind : {"cohomology", "split", "degree"}) {
    auto* s = bundle->add_subcommand(kind, "bundle " + kind);
    s->add_option("--file", o.file, "JSON file {\"field\": ..., \"g\": [[...]]}");
    s->add_option("--matrix", o.matrix, "the same document inline");
    s->callback([&, kind] { job = [&, kind] { return cmd_bundle(o, kind); }; });
  }

  auto* pair = app.add_subcommand("pair", "pushdown of the intersection cocycle of two divisors");
  pair->add_option("--L", o.L, "divisor L")->required();
  pair->add_option("--M", o.M, "divisor M")->required();
  pair->callback([&] { job = [&] { return cmd_pair(o); }; });

  auto* push = app.add_subcommand("pushdown", "local pushdown of {f, g} at a flag");
  push->add_option("--eta1", o.eta1, "curve")->required();
  push->add_option("--eta2", o.eta2, "closed point")->required();
  push->add_option("--f", o.f, "f")->required();
  push->add_option("--g", o.g, "g")->required();
  push->callback([&] { job = [&] { return cmd_pushdown(o); }; });

  auto* del = app.add_subcommand("deligne", "pairing side against the norm side");
  del->add_option("--L", o.L, "divisor L")->required();
  del->add_option("--M", o.M, "horizontal curve M")->required();
  del->callback([&] { job = [&] { return cmd_deligne(o); }; });

  auto* rr = app.add_subcommand("rr-check", "adelic Riemann-Roch for a line bundle");
  rr->add_option("--divisor", o.divisor, "divisor on the generic fiber, e.g. \"2*H0\"")->required();
  rr->add_option("--move", o.move, "point used by the moving lemma");
  rr->callback([&] { job = [&] { return cmd_rr(o); }; });

  auto* grp = app.add_subcommand("group", "rational group algebras")->require_subcommand(1);
  auto* wd = grp->add_subcommand("wedderburn", "Wedderburn decomposition");
  auto* dt = grp->add_subcommand("det", "componentwise reduced norm");
  for (auto* s : {wd, dt}) {
    s->add_option("--group", o.group, "C<n>, D<n>, S3 or Q8");
    s->add_option("--table", o.table, "JSON multiplication table");
  }
  dt->add_option("--matrix", o.matrix, "JSON rows of group-basis coefficient lists")->required();
  wd->callback([&] { job = [&] { return cmd_group_wedderburn(o); }; });
  dt->callback([&] { job = [&] { return cmd_group_det(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    json j = {{"error", kind}, {"message", msg}};
    try {
      emit(j, o);
    } catch (...) {
      std::cout << j.dump() << "\n";
    }
    return code;
  };
  try {
    Result r = job();
    emit(r.out, o);
    return r.passed ? 0 : 1;
  } catch (const SchemaError& e) {
    return fail(2, "SchemaError", e.what());
  } catch (const json::exception& e) {
    return fail(2, "SchemaError", e.what());
  } catch (const ParseError& e) {
    return fail(2, e.kind(), e.what());
  } catch (const PrecisionExhausted& e) {
    return fail(3, e.kind(), e.what());
  } catch (const Error& e) {
    return fail(1, e.kind(), e.what());
  }
}
