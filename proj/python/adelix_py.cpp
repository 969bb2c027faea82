#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adelix/bundles.hpp"
#include "adelix/groupalg.hpp"
#include "adelix/loopext.hpp"
#include "adelix/surface.hpp"

namespace py = pybind11;
using namespace adelix;

namespace {

py::dict report_dict(const ReciprocityReport& r) {
  py::list parts;
  for (const auto& p : r.parts) parts.append(py::make_tuple(p.locus, p.value.str()));
  py::dict d;
  d["kind"] = r.kind;
  d["parts"] = parts;
  d["product"] = r.product.str();
  d["passed"] = r.passed;
  return d;
}

py::dict idele_dict(const IdeleClass& x) {
  py::dict d;
  for (const auto& [p, v] : x.comps) d[py::str(p.get_str())] = v.str();
  return d;
}

py::dict module_dict(const ModuleReport& m) {
  py::list tors;
  for (const auto& t : m.torsion) tors.append(t.str());
  py::dict d;
  d["rank"] = m.rank;
  d["torsion"] = tors;
  return d;
}

HorrocksBundle bundle_from_rows(RingPtr R, const std::vector<std::vector<std::string>>& rows) {
  int n = static_cast<int>(rows.size());
  LMatrix g(n, n, Laurent(R));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw ParseError("transition matrix must be square");
    for (int j = 0; j < n; ++j) g(i, j) = parse_laurent(R, rows[i][j]);
  }
  return HorrocksBundle::from_matrix(g);
}

GroupMatrix group_matrix(const FiniteGroup& G, const std::vector<std::vector<std::vector<std::string>>>& rows) {
  GroupMatrix x;
  for (const auto& row : rows) {
    std::vector<GroupRingElem> r;
    for (const auto& e : row) {
      if (static_cast<int>(e.size()) != G.order()) throw ParseError("group ring element needs one coefficient per group element");
      GroupRingElem v;
      for (const auto& c : e) v.push_back(Rat(c));
      r.push_back(v);
    }
    if (r.size() != rows.size()) throw ParseError("matrix must be square");
    x.push_back(r);
  }
  return x;
}

}  // namespace

PYBIND11_MODULE(_adelix, m) {
  m.doc() = "Exact symbols, loop-group extensions, bundles and adelic reciprocity";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted", base.ptr());
  py::register_exception<NotAUnit>(m, "NotAUnit", base.ptr());
  py::register_exception<NotCoprime>(m, "NotCoprime", base.ptr());
  py::register_exception<NotSquarefreeModP>(m, "NotSquarefreeModP", base.ptr());
  py::register_exception<NotDetOne>(m, "NotDetOne", base.ptr());
  py::register_exception<WindowUnstable>(m, "WindowUnstable", base.ptr());
  py::register_exception<SharedComponent>(m, "SharedComponent", base.ptr());
  py::register_exception<DoesNotSplit>(m, "DoesNotSplit", base.ptr());
  py::register_exception<NotInvertible>(m, "NotInvertible", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());

  // rings are interned for the life of the process
  py::class_<Ring, std::unique_ptr<Ring, py::nodelete>>(m, "Ring").def("__repr__", [](const Ring& r) { return "<Ring " + r.name + ">"; });
  const auto ref = py::return_value_policy::reference;
  m.def("integers", &ring_integers, ref);
  m.def("rationals", &ring_rationals, ref);
  m.def("prime_field", [](long p) { return ring_prime_field(Int(p)); }, ref);
  m.def("padic", [](long p, int m) { return ring_padic(Int(p), m); }, py::arg("p"), py::arg("precision"), ref);

  py::class_<Scalar>(m, "Scalar")
      .def("__str__", &Scalar::str)
      .def("__repr__", [](const Scalar& s) { return "Scalar(" + s.str() + ")"; })
      .def("__eq__", &Scalar::operator==)
      .def("__mul__", &Scalar::operator*)
      .def("inv", &Scalar::inv)
      .def("is_one", &Scalar::is_one)
      .def("valuation", &Scalar::valuation)
      .def("unit_part", &Scalar::unit_part);

  // Laurent series and two-dimensional local field elements travel as text.
  m.def("tame", [](RingPtr R, const std::string& a, const std::string& b) {
    return tame_pair(parse_laurent(R, a), parse_laurent(R, b));
  });
  m.def("tame_word", [](RingPtr R, const std::string& w) { return tame_symbol(parse_laurent_word(R, w)); });
  m.def("boundary", [](RingPtr R, const std::string& a, const std::string& b) {
    return boundary_pair(parse_laurent(R, a), parse_laurent(R, b));
  });
  // F must be a p-adic ring with at least precision + 1 digits.
  m.def("kato", [](RingPtr F, const std::string& a, const std::string& b, int n) {
    return kato_pair(parse_twodim(F, a), parse_twodim(F, b), n);
  });
  m.def("boundary_padic", [](RingPtr F, const std::string& a, const std::string& b, int n) {
    return boundary_padic_pair(parse_twodim(F, a), parse_twodim(F, b), n);
  });

  m.def("bundle_cohomology", [](RingPtr R, const std::vector<std::vector<std::string>>& g) {
    CohomologyReport c = cech_cohomology(bundle_from_rows(R, g));
    py::dict d;
    d["h0"] = module_dict(c.h0);
    d["h1"] = module_dict(c.h1);
    d["euler"] = c.euler;
    return d;
  });
  m.def("splitting_type", [](RingPtr R, const std::vector<std::vector<std::string>>& g) {
    return birkhoff_split(bundle_from_rows(R, g)).type;
  });

  m.def("reciprocity_vertical", [](const std::string& f, const std::string& g, long p, int m) {
    return report_dict(reciprocity_vertical(parse_ratfun(ring_integers(), f), parse_ratfun(ring_integers(), g), Int(p), m));
  }, py::arg("f"), py::arg("g"), py::arg("p"), py::arg("precision") = 4);
  m.def("reciprocity_point", [](const std::string& f, const std::string& g, const std::string& x, int m) {
    return report_dict(reciprocity_point(parse_ratfun(ring_integers(), f), parse_ratfun(ring_integers(), g),
                                         ClosedPoint::parse(x), m));
  }, py::arg("f"), py::arg("g"), py::arg("point"), py::arg("precision") = 4);
  m.def("weil_reciprocity", [](const std::string& f, const std::string& g, long p) {
    RingPtr K = ring_prime_field(Int(p));
    return report_dict(weil_reciprocity(parse_ratfun(K, f), parse_ratfun(K, g)));
  });

  m.def("deligne_compare", [](const std::string& L, const std::string& M, int m) {
    DeligneReport r = deligne_compare(DivisorLB::parse(L), DivisorLB::parse(M), m);
    py::dict d;
    d["pairing_side"] = idele_dict(r.pairing_side);
    d["norm_side"] = idele_dict(r.norm_side);
    d["passed"] = r.passed;
    return d;
  }, py::arg("L"), py::arg("M"), py::arg("precision") = 4);
  m.def("rr_check", [](const std::string& D, int m) {
    RRReport r = rr_check(DivisorLB::parse(D), m);
    py::dict d;
    d["lhs_trivial"] = r.lhs_trivial;
    d["rhs"] = idele_dict(r.rhs);
    d["rhs_trivial"] = r.rhs_membership.passed;
    d["passed"] = r.passed;
    return d;
  }, py::arg("divisor"), py::arg("precision") = 4);

  m.def("wedderburn", [](const std::string& group) {
    SplitGroupAlgebra A = wedderburn(FiniteGroup::builtin(group));
    py::dict d;
    d["dimensions"] = A.dimensions();
    d["decomposition"] = A.str();
    return d;
  });
  // matrix[i][j] is the coefficient list of an element of Q[G], in the
  // group's element order.
  m.def("group_det", [](const std::string& group, const std::vector<std::vector<std::vector<std::string>>>& matrix) {
    FiniteGroup G = FiniteGroup::builtin(group);
    DetVector v = det_map(group_matrix(G, matrix), wedderburn(G));
    std::vector<std::string> out;
    for (const auto& x : v.values) out.push_back(x.str("y"));
    return out;
  });
}
