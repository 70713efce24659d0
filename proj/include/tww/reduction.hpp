#ifndef TWW_REDUCTION_HPP
#define TWW_REDUCTION_HPP

#include "tww/cnf.hpp"
#include "tww/gadgets.hpp"
#include "tww/sequence.hpp"

namespace tww {

// Thrown by the witness synthesizer when the assignment leaves a gadget's
// contraction preconditions unsatisfiable; carries the gadget role path.
struct RefusalError : TwwError {
    RefusalError(const std::string& gadget, const std::string& why)
        : TwwError("refused at " + gadget + ": " + why), gadget_path(gadget) {}
    std::string gadget_path;
};

struct PreprocessResult {
    enum class Outcome { reduced, trivially_sat, trivially_unsat };
    Outcome outcome = Outcome::reduced;
    CnfInstance cnf;
    std::vector<int> source_var; // per new variable, the original variable index
};

// Clause-level cleanup, unit propagation and pure-literal elimination to a
// fixpoint, then variable splitting with an implication cycle so that each
// variable occurs at most twice per polarity (and each literal at least once).
PreprocessResult preprocess_occurrences(const CnfInstance& cnf);

bool is_compliant(const CnfInstance& cnf, std::string* why = nullptr);

struct LiteralWire {
    int occurrences = 0;
    std::vector<VerticalSet> trunk; // root output -> branch
    VerticalSet branch;
    std::vector<VerticalSet> arm1, arm2; // branch -> leaves
    VerticalSet leaf1, leaf2;            // leaf2 unused when occurrences == 1
};

struct ReductionOutput {
    Trigraph graph;
    Manifest manifest;
    PropagationDigraph digraph;
    std::vector<FenceHandle> fences;
    CnfInstance cnf; // the compliant instance that was encoded
    int chain_length = 0; // L = 2 ceil(log2(5n+3m))

    std::vector<VariableHandle> variables;
    std::vector<LiteralWire> pos_wires, neg_wires;
    std::vector<ClauseHandle> clauses;
    std::vector<std::vector<VerticalSet>> clause_out_chains; // clause out -> vc[j]
    std::vector<VerticalSet> vc;
    std::vector<std::vector<VerticalSet>> vc_chains; // vc[j] -> vc[j-1]
    VerticalSet vo;
    std::vector<VerticalSet> aa, bb;
    std::vector<VerticalSet> fb_entry; // chain vo -> aa[1]
    std::vector<std::vector<VerticalSet>> fb_cross, fb_next, fb_guard1, fb_guard2;

    struct Stats {
        int vertices = 0;
        std::size_t black_edges = 0, red_edges = 0;
        int fences = 0, vertical_sets = 0;
    } stats;
};

ReductionOutput build_instance(const CnfInstance& compliant);

// The forward-direction schedule: halves, true wires, OR gates, clause
// chains, the output component, variable unlock, false wires, and the
// terminal subdivision phase. Refuses (without emitting anything) when the
// assignment does not satisfy some clause.
ContractionSequence synthesize_witness(const ReductionOutput& out, const std::vector<bool>& assignment,
                                       std::size_t* phase_boundary = nullptr);

// Replays the prefix and checks the phase-boundary shape: only red edges,
// degree at most 4, an (>=L)-subdivision of a graph on at most 5n+3m vertices.
Trigraph residual_red_graph(const ReductionOutput& out, const ContractionSequence& prefix);

std::string to_manifest_json(const ReductionOutput& out);
// Rebuilds the instance from the manifest's embedded CNF and verifies the
// recorded graph digest still matches.
ReductionOutput reduction_from_manifest(const std::string& json_text);

} // namespace tww

#endif
