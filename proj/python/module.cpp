#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "djhp/report.hpp"

namespace py = pybind11;
using namespace djhp;

namespace {

struct PyAlgebra {
    AlgebraPtr ptr;
};

struct PyLambda {
    LambdaAlgebra L;
};

PyAlgebra from_presentation(const Presentation& p, int cutoff) {
    return {algebra_from_presentation(p, cutoff).algebra};
}

py::dict cert_dict(const AdmissibilityCertificate& c) {
    py::dict d;
    d["certified"] = c.certified;
    d["witness_length"] = c.witness_length;
    d["refusal"] = c.refusal;
    return d;
}

py::dict strat_dict(const StratifyingCertificate& c) {
    py::dict d;
    d["idempotent"] = c.idempotent_label;
    d["mode"] = c.mode == StratifyingCertificate::Mode::Criterion ? "criterion" : "direct";
    switch (c.verdict) {
    case StratifyingCertificate::Verdict::CertifiedFully: d["verdict"] = "certified-fully"; break;
    case StratifyingCertificate::Verdict::CertifiedToDegree:
        d["verdict"] = "certified-to-degree";
        break;
    case StratifyingCertificate::Verdict::Refuted: d["verdict"] = "refuted"; break;
    default: d["verdict"] = "inconclusive";
    }
    d["degree"] = c.degree;
    d["detail"] = c.detail;
    d["evidence"] = c.evidence;
    return d;
}

py::dict gldim_dict(const GlDimReport& g) {
    py::dict d;
    switch (g.overall) {
    case GlDimReport::Overall::Finite: d["overall"] = "finite"; break;
    case GlDimReport::Overall::Infinite: d["overall"] = "infinite"; break;
    default: d["overall"] = "at-least";
    }
    d["value"] = g.value;
    py::list per;
    for (const auto& s : g.per_simple) {
        py::dict e;
        e["vertex"] = s.vertex;
        e["kind"] = s.kind == SimpleGlDim::Kind::Exact ? "exact"
                    : s.kind == SimpleGlDim::Kind::Infinite ? "infinite" : "at-least";
        e["value"] = s.value;
        if (s.kind == SimpleGlDim::Kind::Infinite)
            e["period"] = py::make_tuple(s.period.first, s.period.second);
        per.append(e);
    }
    d["per_simple"] = per;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Matrix algebras Lambda(A,B) from quiver presentations, with stratifying "
              "certificates and DJHP failure reports";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Presentation>(m, "Presentation")
        .def_readonly("name", &Presentation::name)
        .def_property_readonly("vertices",
                               [](const Presentation& p) { return p.quiver.vertices; })
        .def_property_readonly("arrows",
                               [](const Presentation& p) {
                                   std::vector<std::tuple<std::string, std::string, std::string>>
                                       out;
                                   for (const auto& a : p.quiver.arrows)
                                       out.emplace_back(a.label, a.src, a.tgt);
                                   return out;
                               })
        .def_property_readonly(
            "relation_count",
            [](const Presentation& p) { return static_cast<int>(p.relations.size()); })
        .def("emit_dsl",
             [](const Presentation& p) { return emit_presentation(p, EmitFormat::DSL); })
        .def("emit_dot",
             [](const Presentation& p) { return emit_presentation(p, EmitFormat::DOT); })
        .def("__eq__", [](const Presentation& a, const Presentation& b) { return a == b; })
        .def("__repr__", [](const Presentation& p) {
            return "<Presentation " + p.name + ": " + std::to_string(p.quiver.vertices.size()) +
                   " vertices, " + std::to_string(p.quiver.arrows.size()) + " arrows, " +
                   std::to_string(p.relations.size()) + " relations>";
        });

    py::class_<PyAlgebra>(m, "Algebra")
        .def_property_readonly("name", [](const PyAlgebra& a) { return a.ptr->name; })
        .def_property_readonly("dim", [](const PyAlgebra& a) { return a.ptr->dim(); })
        .def_property_readonly("rank", [](const PyAlgebra& a) { return a.ptr->rank(); })
        .def_property_readonly(
            "radical_dim",
            [](const PyAlgebra& a) { return static_cast<int>(a.ptr->radical_indices().size()); })
        .def_property_readonly("basis_labels",
                               [](const PyAlgebra& a) {
                                   std::vector<std::string> out;
                                   for (const auto& b : a.ptr->basis) out.push_back(b.label);
                                   return out;
                               })
        .def("to_json", [](const PyAlgebra& a) { return algebra_to_json(*a.ptr); })
        .def("__repr__", [](const PyAlgebra& a) {
            return "<Algebra " + a.ptr->name + ": dim " + std::to_string(a.ptr->dim()) +
                   ", rank " + std::to_string(a.ptr->rank()) + ">";
        });

    py::class_<PyLambda>(m, "Lambda")
        .def_property_readonly("algebra", [](const PyLambda& l) { return PyAlgebra{l.L.algebra}; })
        .def_property_readonly("dim", [](const PyLambda& l) { return l.L.algebra->dim(); })
        .def_property_readonly("rank", [](const PyLambda& l) { return l.L.algebra->rank(); })
        .def("__repr__", [](const PyLambda& l) {
            return "<Lambda: dim " + std::to_string(l.L.algebra->dim()) + ", rank " +
                   std::to_string(l.L.algebra->rank()) + ">";
        });

    m.def("parse_presentation", &parse_presentation, py::arg("text"),
          "Parse a .qa document into a Presentation");
    m.def(
        "validate_admissible",
        [](const Presentation& p, int cutoff) { return cert_dict(validate_admissible(p, cutoff)); },
        py::arg("presentation"), py::arg("cutoff") = 8);
    m.def("algebra_from_presentation", &from_presentation, py::arg("presentation"),
          py::arg("cutoff") = 8);
    m.def(
        "build_twisted_tensor",
        [](const PyAlgebra& a, const PyAlgebra& b) {
            return PyAlgebra{build_twisted_tensor(a.ptr, b.ptr).algebra};
        },
        py::arg("A"), py::arg("B"));
    m.def(
        "verify_twist_axioms",
        [](const PyAlgebra& a, const PyAlgebra& b) { return verify_twist_axioms(a.ptr, b.ptr).ok; },
        py::arg("A"), py::arg("B"));
    m.def(
        "build_lambda",
        [](const PyAlgebra& a, const PyAlgebra& b) { return PyLambda{build_lambda(a.ptr, b.ptr)}; },
        py::arg("A"), py::arg("B"));
    m.def(
        "lambda_presentation",
        [](const Presentation& pA, const Presentation& pB) {
            return lambda_presentation(pA, pB).presentation;
        },
        py::arg("A"), py::arg("B"));
    m.def(
        "verify_phi",
        [](const Presentation& pA, const Presentation& pB) {
            GeneratedPresentation gp = lambda_presentation(pA, pB);
            LambdaAlgebra L = build_lambda(algebra_from_presentation(pA, 8).algebra,
                                           algebra_from_presentation(pB, 8).algebra);
            PhiReport rep = verify_phi(gp, L);
            py::dict d;
            d["ok"] = rep.ok;
            d["span_dim"] = rep.span_dim;
            d["failure"] = rep.failure;
            return d;
        },
        py::arg("A"), py::arg("B"));
    m.def(
        "quotient_dimension",
        [](const Presentation& p, int cutoff) {
            auto [dim, cert] = quotient_dimension(p, cutoff);
            py::dict d = cert_dict(cert);
            d["dim"] = dim;
            return d;
        },
        py::arg("presentation"), py::arg("cutoff") = 8);
    m.def(
        "stratifying_certificates",
        [](const PyLambda& l, int depth) {
            py::dict d;
            d["e1_criterion"] =
                strat_dict(check_stratifying_criterion(l.L.algebra, l.L.e1, depth));
            d["e1_direct"] = strat_dict(check_stratifying_direct(l.L.algebra, l.L.e1, depth));
            d["e2_criterion"] =
                strat_dict(check_stratifying_criterion(l.L.algebra, l.L.e2, depth));
            d["e2_direct"] = strat_dict(check_stratifying_direct(l.L.algebra, l.L.e2, depth));
            return d;
        },
        py::arg("lambda_algebra"), py::arg("depth") = 8);
    m.def(
        "global_dimension",
        [](const PyAlgebra& a, int depth) { return gldim_dict(global_dimension_bound(a.ptr, depth)); },
        py::arg("algebra"), py::arg("depth") = 8);
    m.def(
        "djhp_report_json",
        [](const Presentation& pA, const Presentation& pB, int depth, int cutoff,
           std::uint64_t seed, bool assert_ds_A, bool assert_ds_B) {
            ReportOptions opts;
            opts.depth = depth;
            opts.cutoff = cutoff;
            opts.seed = seed;
            opts.assert_derived_simple_A = assert_ds_A;
            opts.assert_derived_simple_B = assert_ds_B;
            return djhp_report(pA, pB, opts).to_json();
        },
        py::arg("A"), py::arg("B"), py::arg("depth") = 8, py::arg("cutoff") = 8,
        py::arg("seed") = 9001, py::arg("assert_derived_simple_A") = false,
        py::arg("assert_derived_simple_B") = false);
    m.def(
        "djhp_report_text",
        [](const Presentation& pA, const Presentation& pB, int depth, int cutoff,
           std::uint64_t seed) {
            ReportOptions opts;
            opts.depth = depth;
            opts.cutoff = cutoff;
            opts.seed = seed;
            return djhp_report(pA, pB, opts).to_text();
        },
        py::arg("A"), py::arg("B"), py::arg("depth") = 8, py::arg("cutoff") = 8,
        py::arg("seed") = 9001);

    m.attr("__version__") = "0.1.0";
}
