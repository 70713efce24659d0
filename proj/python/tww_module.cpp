// pytww: python bindings over the twin-width toolkit core.

#include "tww/encoder.hpp"
#include "tww/io.hpp"
#include "tww/reduction.hpp"
#include "tww/solver.hpp"
#include "tww/subdivision.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace tww;

namespace {

std::string trigraph_to_text(const Trigraph& g) {
    std::ostringstream out;
    write_trigraph(out, g);
    return out.str();
}

Trigraph trigraph_from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_trigraph(in);
}

std::string sequence_to_text(const ContractionSequence& seq) {
    std::ostringstream out;
    write_sequence(out, seq);
    return out.str();
}

ContractionSequence sequence_from_text(const std::string& text, const Trigraph& base) {
    std::istringstream in(text);
    return parse_sequence(in, base);
}

py::dict report_to_dict(const VerificationReport& r) {
    py::dict d;
    d["accepted"] = r.accepted();
    d["status"] = r.status == VerificationReport::Status::accepted          ? "accepted"
                  : r.status == VerificationReport::Status::width_violation ? "width_violation"
                                                                            : "malformed";
    d["width"] = r.width;
    d["violation_step"] = r.violation_step;
    d["offenders"] = r.offenders;
    d["message"] = r.message;
    return d;
}

} // namespace

PYBIND11_MODULE(pytww, m) {
    m.doc() = "twin-width toolkit: trigraphs, contraction sequences, solver, reduction";

    py::register_exception<TwwError>(m, "TwwError");

    py::class_<Trigraph>(m, "Trigraph")
        .def(py::init<>())
        .def(py::init<int>(), py::arg("n"))
        .def("add_vertex", py::overload_cast<>(&Trigraph::add_vertex))
        .def("add_black", &Trigraph::add_black)
        .def("add_red", &Trigraph::add_red)
        .def("has_black", &Trigraph::has_black)
        .def("has_red", &Trigraph::has_red)
        .def("contract", &Trigraph::contract)
        .def("red_degree", &Trigraph::red_degree)
        .def("max_red_degree", &Trigraph::max_red_degree)
        .def("degree", &Trigraph::degree)
        .def("n", &Trigraph::n)
        .def("vertices", &Trigraph::vertices)
        .def("black_edges", &Trigraph::black_edges)
        .def("red_edges", &Trigraph::red_edges)
        .def("red_components", &Trigraph::red_components)
        .def("induced",
             [](const Trigraph& g, const std::vector<Vid>& s) {
                 return g.induced(std::set<Vid>(s.begin(), s.end()));
             })
        .def("__eq__", [](const Trigraph& a, const Trigraph& b) { return a == b; })
        .def("__repr__", [](const Trigraph& g) {
            return "Trigraph(n=" + std::to_string(g.n()) +
                   ", black=" + std::to_string(g.black_edge_count()) +
                   ", red=" + std::to_string(g.red_edge_count()) + ")";
        });

    py::class_<ContractionStep>(m, "ContractionStep")
        .def_readonly("left", &ContractionStep::left)
        .def_readonly("right", &ContractionStep::right)
        .def_readonly("result", &ContractionStep::result);

    py::class_<ContractionSequence>(m, "ContractionSequence")
        .def_readonly("base", &ContractionSequence::base)
        .def_readonly("steps", &ContractionSequence::steps)
        .def_readonly("partial", &ContractionSequence::partial)
        .def("__len__", [](const ContractionSequence& s) { return s.steps.size(); });

    m.def("make_sequence", [](const Trigraph& base, const std::vector<std::pair<Vid, Vid>>& merges,
                              bool partial) {
        ContractionSequence seq;
        seq.base = base;
        Vid fresh = base.max_id() + 1;
        for (auto [u, v] : merges)
            seq.steps.push_back({u, v, fresh++});
        seq.partial = partial;
        return seq;
    },
          py::arg("base"), py::arg("merges"), py::arg("partial") = false);

    m.def("verify", [](const ContractionSequence& seq, int d) { return report_to_dict(verify(seq, d)); });
    m.def("width", &width);
    m.def("replay", &replay);

    m.def("parse_trigraph", &trigraph_from_text);
    m.def("write_trigraph", &trigraph_to_text);
    m.def("parse_sequence", &sequence_from_text);
    m.def("write_sequence", &sequence_to_text);

    m.def("decide_at_most", [](const Trigraph& g, int d) {
        auto r = decide_at_most(g, d);
        py::dict out;
        out["status"] = r.status == DecideStatus::yes  ? "yes"
                        : r.status == DecideStatus::no ? "no"
                                                       : "unknown";
        if (r.status == DecideStatus::yes)
            out["witness"] = r.witness;
        return out;
    });
    m.def("twin_width_exact", [](const Trigraph& g) {
        auto r = twin_width_exact(g);
        py::dict out;
        out["status"] = r.status == SolveStatus::exact              ? "exact"
                        : r.status == SolveStatus::upper_bound_only ? "upper_bound_only"
                                                                    : "budget_exhausted";
        out["value"] = r.value;
        out["witness"] = r.witness;
        return out;
    });
    m.def("tree_sequence", &tree_sequence);
    m.def("greedy_upper_bound", [](const Trigraph& g) {
        auto r = greedy_upper_bound(g);
        return py::make_tuple(r.value, r.witness);
    });

    m.def("subdivide_uniform", [](const Trigraph& h, int len) {
        return subdivide_uniform(h, len).subdivided;
    });
    m.def("subdivision_sequence", [](const Trigraph& h, int len) {
        return subdivision_sequence(subdivide_uniform(h, len));
    });

    m.def("encode_all", [](const Trigraph& h, int d, std::optional<int> t_override) {
        return encode_all(h, d, t_override).graph;
    },
          py::arg("h"), py::arg("d"), py::arg("t_override") = std::nullopt);

    m.def("preprocess_occurrences", [](int n_vars, const std::vector<std::vector<int>>& clauses) {
        CnfInstance cnf{n_vars, clauses};
        auto pre = preprocess_occurrences(cnf);
        py::dict out;
        out["outcome"] = pre.outcome == PreprocessResult::Outcome::reduced ? "reduced"
                         : pre.outcome == PreprocessResult::Outcome::trivially_sat
                             ? "trivially_sat"
                             : "trivially_unsat";
        out["n_vars"] = pre.cnf.n_vars;
        out["clauses"] = pre.cnf.clauses;
        return out;
    });
    m.def("truth_table_sat", [](int n_vars, const std::vector<std::vector<int>>& clauses) {
        return truth_table_sat(CnfInstance{n_vars, clauses});
    });
    m.def("reduce_cnf", [](int n_vars, const std::vector<std::vector<int>>& clauses) {
        auto out = build_instance(CnfInstance{n_vars, clauses});
        return py::make_tuple(out.graph, to_manifest_json(out));
    });
    m.def("synthesize_witness",
          [](const std::string& manifest_json, const std::vector<bool>& assignment) {
              auto out = reduction_from_manifest(manifest_json);
              return synthesize_witness(out, assignment);
          });
}
