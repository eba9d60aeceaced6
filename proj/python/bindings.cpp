// pybind11 surface: field arithmetic, Dickson evaluation, partitions,
// monoid enumeration, separating invariants and the verification drivers.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <vector>

#include "dilation/dickson.hpp"
#include "dilation/field.hpp"
#include "dilation/monoid.hpp"
#include "dilation/separating.hpp"
#include "dilation/structure.hpp"
#include "dilation/subspace.hpp"

namespace py = pybind11;
using namespace dilation;

namespace {

struct FieldHandle {
  FieldPtr f;
  const Field& get() const { return *f; }
};

std::vector<std::int64_t> coords_of(const ExponentVec& v) { return v.a; }

} // namespace

PYBIND11_MODULE(_dilation, m) {
  m.doc() = "exact arithmetic for finite additive subgroups and their "
            "dilation invariants";

  py::class_<Element>(m, "Element")
      .def("__str__", &Element::str)
      .def("__repr__", [](const Element& e) { return "Element('" + e.str() + "')"; })
      .def("__hash__", [](const Element& e) { return e.index(); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(-py::self)
      .def("index", &Element::index)
      .def("digits", &Element::digits)
      .def("is_zero", &Element::is_zero)
      .def("inverse", &Element::inverse)
      .def("pow", &Element::pow, py::arg("e"))
      .def("frobenius", &Element::frobenius, py::arg("s") = 1);

  py::class_<FieldHandle>(m, "Field")
      .def(py::init([](std::int64_t p, int n) { return FieldHandle{Field::make(p, n)}; }),
           py::arg("p"), py::arg("n"))
      .def_property_readonly("p", [](const FieldHandle& h) { return h.f->p(); })
      .def_property_readonly("n", [](const FieldHandle& h) { return h.f->n(); })
      .def_property_readonly("order", [](const FieldHandle& h) { return h.f->order(); })
      .def_property_readonly("modulus", [](const FieldHandle& h) { return h.f->modulus(); })
      .def("zero", [](const FieldHandle& h) { return h.f->zero(); })
      .def("one", [](const FieldHandle& h) { return h.f->one(); })
      .def("gen", [](const FieldHandle& h) { return h.f->gen(); })
      .def("from_index",
           [](const FieldHandle& h, std::uint64_t i) { return h.f->from_index(i); })
      .def("from_string",
           [](const FieldHandle& h, const std::string& s) { return h.f->from_string(s); })
      .def("from_int",
           [](const FieldHandle& h, std::int64_t k) { return h.f->from_int(k); })
      .def("from_digits",
           [](const FieldHandle& h, std::vector<int> d) {
             return h.f->from_digits(std::move(d));
           })
      .def("subfield_basis",
           [](const FieldHandle& h, int mm) { return h.f->subfield_basis(mm); })
      .def("subfield_elements",
           [](const FieldHandle& h, int mm) { return h.f->subfield_elements(mm); })
      .def("__repr__", [](const FieldHandle& h) {
        return "Field(" + std::to_string(h.f->p()) + ", " + std::to_string(h.f->n()) + ")";
      });

  m.def("dickson", [](const std::vector<Element>& basis) {
    return dickson_eval(basis).d;
  }, "Dickson coordinate vector (d_1, ..., d_r) of an independent tuple");

  m.def("span_rank", [](const std::vector<Element>& basis) { return rank(basis); });

  m.def("partition_of",
        [](const FieldHandle& h, const std::vector<Element>& gens) {
          return partition_of(h.get(), canonicalize(h.get(), gens));
        },
        "lexicographically greatest realized decomposition type of the span");

  m.def("classify",
        [](const FieldHandle& h, const std::vector<Element>& gens) {
          return classify(h.get(), canonicalize(h.get(), gens));
        },
        "partition plus a flag telling whether a closed form decided it");

  m.def("gaussian_binomial", &gaussian_binomial, py::arg("n"), py::arg("r"),
        py::arg("p"));

  m.def("subgroup_count", [](const FieldHandle& h, int r) {
    return enumerate_subspaces(h.get(), r).size();
  });

  m.def("enumerate_primitive",
        [](std::int64_t p, int r, std::int64_t cap) {
          const PrimitiveEnumeration en = enumerate_primitive(p, r, cap);
          std::vector<std::vector<std::int64_t>> coords;
          for (const ExponentVec& v : en.primitives) coords.push_back(coords_of(v));
          return py::make_tuple(coords, en.touches_cap);
        },
        py::arg("p"), py::arg("r"), py::arg("cap"));

  m.def("generating_family", [](std::int64_t p, int r) {
    std::vector<std::pair<std::vector<std::int64_t>, std::string>> out;
    for (const FamilyMember& mm : generating_family(p, r))
      out.emplace_back(coords_of(mm.v), mm.tag);
    return out;
  });

  m.def("height", [](std::int64_t p, std::vector<std::int64_t> a) {
    return height(ExponentVec{p, std::move(a)});
  });

  m.def("is_solution", [](std::int64_t p, std::vector<std::int64_t> a) {
    return is_solution(ExponentVec{p, std::move(a)});
  });

  m.def("separating_labels", [](std::int64_t p, int r) {
    std::vector<std::string> out;
    for (const InvariantSpec& s : separating_set(p, r)) out.push_back(s.label);
    return out;
  });

  m.def("eval_separating", [](const FieldHandle& h, const std::vector<Element>& gens) {
    const Basis basis = basis_of(h.get(), canonicalize(h.get(), gens));
    const DicksonVector dv = dickson_eval(basis);
    std::vector<std::pair<std::string, Element>> out;
    for (const InvariantSpec& s : separating_set(h.f->p(), dv.r))
      out.emplace_back(s.label, eval_invariant(s, dv));
    return out;
  }, "separating invariant values on the span of the given generators");

  m.def("separation_check", [](const FieldHandle& h, int r, std::uint64_t seed) {
    const SeparatingReport rep = separation_check(h.get(), r, seed);
    return py::make_tuple(rep.orbit_count, rep.unseparated_pairs.size(),
                          rep.dilation_invariance_ok);
  }, py::arg("field"), py::arg("r"), py::arg("seed") = 20240901);

  m.def("verify_fq_space", [](const FieldHandle& h, int s, int r) {
    return verify_fq_space(h.get(), s, r);
  });
  m.def("verify_composition", [](const FieldHandle& h) {
    return verify_composition(h.get());
  });
  m.def("verify_codim1", [](const FieldHandle& h, int s) {
    return verify_codim1(h.get(), s);
  });
  m.def("verify_embedding", [](const FieldHandle& h, int r) {
    return verify_embedding(h.get(), r);
  });
  m.def("verify_rank4_fp2", [](const FieldHandle& h) {
    return verify_rank4_fp2(h.get());
  });
  m.def("verify_classification", [](const FieldHandle& h, int r) {
    return verify_classification(h.get(), r);
  });

  m.def("check_conjecture", [](const std::string& name, const FieldHandle& h) {
    const ConjectureOutcome out = check_conjecture(conjecture_from_name(name), h.get());
    return py::make_tuple(out.checked, out.reverse_mismatches.size(),
                          out.forward_counterexamples.size());
  });
}
