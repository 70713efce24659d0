#include "tww/reduction.hpp"

#include "tww/subdivision.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace tww {

namespace {

int ceil_log2(int n) {
    int h = 0, p = 1;
    while (p < n) {
        p <<= 1;
        ++h;
    }
    return h;
}

} // namespace

bool is_compliant(const CnfInstance& cnf, std::string* why) {
    auto reject = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    try {
        cnf.validate();
    } catch (const TwwError& e) {
        return reject(e.what());
    }
    if (cnf.n_vars == 0 || cnf.clauses.empty())
        return reject("no variables or no clauses");
    std::vector<int> pos(static_cast<std::size_t>(cnf.n_vars) + 1, 0);
    std::vector<int> neg(static_cast<std::size_t>(cnf.n_vars) + 1, 0);
    for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
        const auto& cl = cnf.clauses[j];
        if (cl.size() < 2 || cl.size() > 3)
            return reject("clause " + std::to_string(j + 1) + " must have 2 or 3 literals");
        std::set<int> seen;
        for (int lit : cl) {
            if (!seen.insert(lit).second)
                return reject("duplicate literal in clause " + std::to_string(j + 1));
            if (seen.count(-lit))
                return reject("tautological clause " + std::to_string(j + 1));
            if (lit > 0)
                ++pos[static_cast<std::size_t>(lit)];
            else
                ++neg[static_cast<std::size_t>(-lit)];
        }
    }
    for (int v = 1; v <= cnf.n_vars; ++v) {
        if (pos[static_cast<std::size_t>(v)] > 2 || neg[static_cast<std::size_t>(v)] > 2)
            return reject("variable " + std::to_string(v) + " occurs more than twice per polarity");
        if (pos[static_cast<std::size_t>(v)] == 0 || neg[static_cast<std::size_t>(v)] == 0)
            return reject("variable " + std::to_string(v) + " misses a polarity");
    }
    return true;
}

PreprocessResult preprocess_occurrences(const CnfInstance& input) {
    input.validate();
    for (const auto& cl : input.clauses)
        if (cl.size() > 3)
            throw TwwError("preprocess: clause width exceeds 3");

    PreprocessResult res;

    // clause-level cleanup: dedupe literals (keeping order), drop tautologies
    std::vector<std::vector<int>> clauses;
    for (const auto& cl : input.clauses) {
        std::vector<int> lits;
        std::set<int> seen;
        bool taut = false;
        for (int lit : cl) {
            if (seen.count(-lit))
                taut = true;
            if (seen.insert(lit).second)
                lits.push_back(lit);
        }
        if (!taut)
            clauses.push_back(std::move(lits));
    }

    // unit propagation and pure-literal elimination to a fixpoint
    std::map<int, bool> assigned; // var -> value
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& cl : clauses) {
            if (cl.size() == 1) {
                int lit = cl[0];
                int var = std::abs(lit);
                bool val = lit > 0;
                auto it = assigned.find(var);
                if (it != assigned.end() && it->second != val) {
                    res.outcome = PreprocessResult::Outcome::trivially_unsat;
                    return res;
                }
                assigned[var] = val;
                changed = true;
            }
        }
        if (!changed) {
            // pure literals among the remaining clauses
            std::map<int, int> polarity; // var -> +1, -1, or 0 for both
            for (const auto& cl : clauses) {
                for (int lit : cl) {
                    int var = std::abs(lit);
                    int sgn = lit > 0 ? 1 : -1;
                    auto [it, fresh] = polarity.emplace(var, sgn);
                    if (!fresh && it->second != sgn)
                        it->second = 0;
                }
            }
            for (auto [var, sgn] : polarity) {
                if (sgn != 0 && !assigned.count(var)) {
                    assigned[var] = sgn > 0;
                    changed = true;
                }
            }
        }
        if (changed) {
            std::vector<std::vector<int>> next;
            for (const auto& cl : clauses) {
                bool sat = false;
                std::vector<int> rest;
                for (int lit : cl) {
                    auto it = assigned.find(std::abs(lit));
                    if (it == assigned.end())
                        rest.push_back(lit);
                    else if (it->second == (lit > 0))
                        sat = true;
                }
                if (sat)
                    continue;
                if (rest.empty()) {
                    res.outcome = PreprocessResult::Outcome::trivially_unsat;
                    return res;
                }
                next.push_back(std::move(rest));
            }
            clauses = std::move(next);
        }
    }
    if (clauses.empty()) {
        res.outcome = PreprocessResult::Outcome::trivially_sat;
        return res;
    }

    // compact the surviving variables
    std::map<int, int> renumber;
    for (const auto& cl : clauses)
        for (int lit : cl)
            renumber.emplace(std::abs(lit), 0);
    int next_var = 0;
    for (auto& [orig, fresh] : renumber) {
        fresh = ++next_var;
        res.source_var.push_back(orig);
    }
    for (auto& cl : clauses)
        for (int& lit : cl)
            lit = (lit > 0 ? 1 : -1) * renumber.at(std::abs(lit));

    // split variables occurring more than twice per polarity: one copy per
    // occurrence, chained by an implication cycle of 2-clauses
    std::vector<int> pos(static_cast<std::size_t>(next_var) + 1, 0);
    std::vector<int> neg(static_cast<std::size_t>(next_var) + 1, 0);
    for (const auto& cl : clauses)
        for (int lit : cl)
            ++(lit > 0 ? pos : neg)[static_cast<std::size_t>(std::abs(lit))];

    std::vector<std::vector<int>> extra;
    std::vector<int> split_source;
    for (int v = 1; v <= next_var; ++v) {
        if (pos[static_cast<std::size_t>(v)] <= 2 && neg[static_cast<std::size_t>(v)] <= 2)
            continue;
        std::vector<int> copies;
        for (auto& cl : clauses) {
            for (int& lit : cl) {
                if (std::abs(lit) != v)
                    continue;
                int copy;
                if (copies.empty()) {
                    copy = v; // reuse the original id for the first occurrence
                } else {
                    copy = next_var + static_cast<int>(split_source.size()) + 1;
                    split_source.push_back(res.source_var[static_cast<std::size_t>(v) - 1]);
                }
                copies.push_back(copy);
                lit = (lit > 0 ? 1 : -1) * copy;
            }
        }
        for (std::size_t k = 0; k < copies.size(); ++k)
            extra.push_back({-copies[k], copies[(k + 1) % copies.size()]});
    }
    for (int src : split_source)
        res.source_var.push_back(src);
    for (auto& cl : extra)
        clauses.push_back(std::move(cl));

    res.cnf.n_vars = next_var + static_cast<int>(split_source.size());
    res.cnf.clauses = std::move(clauses);
    res.outcome = PreprocessResult::Outcome::reduced;
    std::string why;
    if (!is_compliant(res.cnf, &why))
        throw TwwError("preprocess: output not compliant: " + why);
    return res;
}

ReductionOutput build_instance(const CnfInstance& cnf) {
    std::string why;
    if (!is_compliant(cnf, &why))
        throw TwwError("build_instance: input not compliant: " + why);

    ReductionOutput out;
    out.cnf = cnf;
    int n = cnf.n_vars;
    int m = static_cast<int>(cnf.clauses.size());
    int L = 2 * ceil_log2(5 * n + 3 * m);
    out.chain_length = L;
    // long_chain(from, to, len) inserts len-2 fresh sets; stringing L fresh
    // sets between existing sets keeps every pair of junction vertices
    // separated by at least L degree-2 vertices in the residual.
    const int span = L + 2;

    GadgetBuilder gb;
    for (int i = 1; i <= n; ++i)
        out.variables.push_back(gb.variable_gadget("var[" + std::to_string(i) + "]"));

    // literal wires, with the branching set kept even for single occurrences
    auto occurrences = [&](int lit) {
        int cnt = 0;
        for (const auto& cl : cnf.clauses)
            for (int l : cl)
                if (l == lit)
                    ++cnt;
        return cnt;
    };
    for (int i = 1; i <= n; ++i) {
        for (int sgn : {+1, -1}) {
            LiteralWire w;
            w.occurrences = occurrences(sgn * i);
            const std::string base =
                "wire[" + std::to_string(i) + "]." + (sgn > 0 ? "pos" : "neg");
            const VerticalSet& root =
                sgn > 0 ? out.variables[static_cast<std::size_t>(i) - 1].out_pos
                        : out.variables[static_cast<std::size_t>(i) - 1].out_neg;
            w.branch = gb.vertical_set(base + ".branch");
            w.trunk = gb.long_chain(root, w.branch, span, base + ".trunk");
            w.leaf1 = gb.vertical_set(base + ".leaf[1]");
            w.arm1 = gb.long_chain(w.branch, w.leaf1, span, base + ".arm[1]");
            if (w.occurrences >= 2) {
                w.leaf2 = gb.vertical_set(base + ".leaf[2]");
                w.arm2 = gb.long_chain(w.branch, w.leaf2, span, base + ".arm[2]");
            }
            (sgn > 0 ? out.pos_wires : out.neg_wires).push_back(std::move(w));
        }
    }

    // clause gadgets fed by the literal leaves in occurrence order
    std::map<int, int> used; // literal -> leaves consumed
    auto next_leaf = [&](int lit) -> const VerticalSet& {
        auto& wires = lit > 0 ? out.pos_wires : out.neg_wires;
        const LiteralWire& w = wires[static_cast<std::size_t>(std::abs(lit)) - 1];
        int k = ++used[lit];
        if (k == 1)
            return w.leaf1;
        if (k == 2 && w.occurrences >= 2)
            return w.leaf2;
        throw TwwError("build_instance: literal occurrence bookkeeping broke");
    };
    for (int j = 1; j <= m; ++j) {
        const auto& cl = cnf.clauses[static_cast<std::size_t>(j) - 1];
        const std::string base = "clause[" + std::to_string(j) + "]";
        if (cl.size() == 3) {
            const VerticalSet& a = next_leaf(cl[0]);
            const VerticalSet& b = next_leaf(cl[1]);
            const VerticalSet& c = next_leaf(cl[2]);
            out.clauses.push_back(gb.clause_gadget(a, b, c, span, base));
        } else {
            const VerticalSet& a = next_leaf(cl[0]);
            const VerticalSet& b = next_leaf(cl[1]);
            out.clauses.push_back(gb.clause_gadget2(a, b, base));
        }
    }

    // clause outputs to the global output
    for (int j = 1; j <= m; ++j) {
        out.vc.push_back(gb.vertical_set("vc[" + std::to_string(j) + "]"));
        out.clause_out_chains.push_back(gb.long_chain(out.clauses[static_cast<std::size_t>(j) - 1].out,
                                                      out.vc.back(), span,
                                                      "cchain[" + std::to_string(j) + "]"));
    }
    out.vc_chains.resize(static_cast<std::size_t>(m));
    for (int j = m; j >= 2; --j)
        out.vc_chains[static_cast<std::size_t>(j) - 1] =
            gb.long_chain(out.vc[static_cast<std::size_t>(j) - 1], out.vc[static_cast<std::size_t>(j) - 2],
                          span, "vcchain[" + std::to_string(j) + "]");
    out.vo = gb.vertical_set("vo");
    gb.add_propagation_arc(out.vc[0], out.vo);

    // feedback from the global output to the half-guards
    for (int i = 1; i <= n; ++i) {
        out.aa.push_back(gb.vertical_set("aa[" + std::to_string(i) + "]"));
        out.bb.push_back(gb.vertical_set("bb[" + std::to_string(i) + "]"));
    }
    out.fb_entry = gb.long_chain(out.vo, out.aa[0], span, "fb.entry");
    for (int i = 1; i <= n; ++i) {
        const std::string si = std::to_string(i);
        out.fb_cross.push_back(gb.long_chain(out.aa[static_cast<std::size_t>(i) - 1],
                                             out.bb[static_cast<std::size_t>(i) - 1], span,
                                             "fb.cross[" + si + "]"));
        if (i < n)
            out.fb_next.push_back(gb.long_chain(out.bb[static_cast<std::size_t>(i) - 1],
                                                out.aa[static_cast<std::size_t>(i)], span,
                                                "fb.next[" + si + "]"));
        out.fb_guard1.push_back(gb.long_chain(out.aa[static_cast<std::size_t>(i) - 1],
                                              out.variables[static_cast<std::size_t>(i) - 1].hg1, span,
                                              "fb.guard1[" + si + "]"));
        out.fb_guard2.push_back(gb.long_chain(out.bb[static_cast<std::size_t>(i) - 1],
                                              out.variables[static_cast<std::size_t>(i) - 1].hg2, span,
                                              "fb.guard2[" + si + "]"));
    }

    out.graph = gb.graph();
    out.manifest = gb.manifest();
    out.digraph = gb.digraph();
    out.fences = gb.fences();
    out.stats.vertices = out.graph.n();
    out.stats.black_edges = out.graph.black_edge_count();
    out.stats.red_edges = out.graph.red_edge_count();
    out.stats.fences = static_cast<int>(out.fences.size());
    for (const auto& node : out.digraph.nodes)
        if (node.vertical)
            ++out.stats.vertical_sets;
    return out;
}

namespace {

// schedule helpers for the forward direction
struct Synth {
    const ReductionOutput& out;
    SequenceBuilder sb;
    std::vector<bool> or1_done, or2_done;
    std::map<Vid, const VerticalSet*> leaf_by_x; // leaf pair x -> leaf handle

    explicit Synth(const ReductionOutput& o)
        : out(o), sb(o.graph), or1_done(o.clauses.size(), false), or2_done(o.clauses.size(), false) {
        for (const auto* wires : {&o.pos_wires, &o.neg_wires}) {
            for (const auto& w : *wires) {
                leaf_by_x[w.leaf1.x] = &w.leaf1;
                if (w.occurrences >= 2)
                    leaf_by_x[w.leaf2.x] = &w.leaf2;
            }
        }
    }

    bool primed(const VerticalSet& vs) const { return sb.current(vs.x) == sb.current(vs.y); }

    void collapse(const VerticalSet& vs) { collapse_vertical(sb, vs); }

    void collapse_chain(const std::vector<VerticalSet>& chain) {
        for (const auto& vs : chain)
            collapse(vs);
    }

    const LiteralWire& wire(int var, bool positive) const {
        return positive ? out.pos_wires[static_cast<std::size_t>(var) - 1]
                        : out.neg_wires[static_cast<std::size_t>(var) - 1];
    }

    const VerticalSet& wire_root(int var, bool positive) const {
        const VariableHandle& vh = out.variables[static_cast<std::size_t>(var) - 1];
        return positive ? vh.out_pos : vh.out_neg;
    }

    // descend a literal wire from its root; leaves feeding a still-standing
    // OR gate only get their vertical pair contracted
    void contract_wire(const VerticalSet& root, const LiteralWire& w,
                       const std::function<bool(const VerticalSet&)>& leaf_full) {
        collapse(root);
        collapse_chain(w.trunk);
        collapse(w.branch);
        collapse_chain(w.arm1);
        if (leaf_full(w.leaf1))
            collapse(w.leaf1);
        else
            sb.contract(w.leaf1.x, w.leaf1.y);
        if (w.occurrences >= 2) {
            collapse_chain(w.arm2);
            if (leaf_full(w.leaf2))
                collapse(w.leaf2);
            else
                sb.contract(w.leaf2.x, w.leaf2.y);
        }
    }
};

} // namespace

ContractionSequence synthesize_witness(const ReductionOutput& out, const std::vector<bool>& assignment,
                                       std::size_t* phase_boundary) {
    if (assignment.size() != static_cast<std::size_t>(out.cnf.n_vars))
        throw TwwError("synthesize_witness: assignment size mismatch");
    int n = out.cnf.n_vars;
    int m = static_cast<int>(out.cnf.clauses.size());
    Synth s(out);

    // phase 1: contract the chosen half of every variable gadget
    for (int i = 1; i <= n; ++i)
        contract_variable_half(s.sb, out.variables[static_cast<std::size_t>(i) - 1],
                               assignment[static_cast<std::size_t>(i) - 1]);

    // phase 2: prime and fold the wire of every true literal; leaves keep
    // their fence until their OR gate is dealt with
    for (int i = 1; i <= n; ++i)
        s.contract_wire(s.wire_root(i, assignment[static_cast<std::size_t>(i) - 1]),
                        s.wire(i, assignment[static_cast<std::size_t>(i) - 1]),
                        [](const VerticalSet&) { return false; });

    // phase 3: OR gates with a primed input, then the primed input fences,
    // then the outputs of the contracted gates
    for (int j = 0; j < m; ++j) {
        const ClauseHandle& cl = out.clauses[static_cast<std::size_t>(j)];
        bool in1 = s.sb.current(cl.or1.link1[0]) == s.sb.current(cl.or1.link1[1]);
        bool in2 = s.sb.current(cl.or1.link2[0]) == s.sb.current(cl.or1.link2[1]);
        bool in3 = !cl.reduced &&
                   s.sb.current(cl.or2.link2[0]) == s.sb.current(cl.or2.link2[1]);
        if (!in1 && !in2 && !in3)
            throw RefusalError(cl.path, "no input of the clause gadget is primed");
        if (in1 || in2) {
            contract_or(s.sb, cl.or1, in1 ? 1 : 2);
            s.or1_done[static_cast<std::size_t>(j)] = true;
        }
        if (in3) {
            contract_or(s.sb, cl.or2, 2);
            s.or2_done[static_cast<std::size_t>(j)] = true;
        }
    }
    for (int i = 1; i <= n; ++i) {
        const LiteralWire& w = s.wire(i, assignment[static_cast<std::size_t>(i) - 1]);
        contract_fence_onto(s.sb, w.leaf1.fence, s.sb.current(w.leaf1.x));
        if (w.occurrences >= 2)
            contract_fence_onto(s.sb, w.leaf2.fence, s.sb.current(w.leaf2.x));
    }
    for (int j = 0; j < m; ++j) {
        const ClauseHandle& cl = out.clauses[static_cast<std::size_t>(j)];
        if (s.or1_done[static_cast<std::size_t>(j)])
            s.collapse(cl.reduced ? cl.out : cl.mid);
        if (s.or2_done[static_cast<std::size_t>(j)])
            s.collapse(cl.out);
    }

    // phase 4: clauses whose third literal is false ride the internal chain
    for (int j = 0; j < m; ++j) {
        const ClauseHandle& cl = out.clauses[static_cast<std::size_t>(j)];
        if (cl.reduced || s.or2_done[static_cast<std::size_t>(j)])
            continue;
        s.collapse_chain(cl.chain);
        s.sb.contract(cl.prime.x, cl.prime.y);
        contract_or(s.sb, cl.or2, 1);
        s.or2_done[static_cast<std::size_t>(j)] = true;
        contract_fence_onto(s.sb, cl.prime.fence, s.sb.current(cl.prime.x));
        s.collapse(cl.out);
    }

    // phase 5: the acyclic output component, down to the half-guards
    for (int j = m; j >= 1; --j) {
        s.collapse_chain(out.clause_out_chains[static_cast<std::size_t>(j) - 1]);
        s.collapse(out.vc[static_cast<std::size_t>(j) - 1]);
        if (j >= 2)
            s.collapse_chain(out.vc_chains[static_cast<std::size_t>(j) - 1]);
    }
    s.collapse(out.vo);
    s.collapse_chain(out.fb_entry);
    for (int i = 1; i <= n; ++i) {
        s.collapse(out.aa[static_cast<std::size_t>(i) - 1]);
        s.collapse_chain(out.fb_guard1[static_cast<std::size_t>(i) - 1]);
        s.collapse(out.variables[static_cast<std::size_t>(i) - 1].hg1);
        s.collapse_chain(out.fb_cross[static_cast<std::size_t>(i) - 1]);
        s.collapse(out.bb[static_cast<std::size_t>(i) - 1]);
        s.collapse_chain(out.fb_guard2[static_cast<std::size_t>(i) - 1]);
        s.collapse(out.variables[static_cast<std::size_t>(i) - 1].hg2);
        if (i < n)
            s.collapse_chain(out.fb_next[static_cast<std::size_t>(i) - 1]);
    }

    // phase 6: unlock and finish every variable gadget
    for (int i = 1; i <= n; ++i)
        contract_variable_rest(s.sb, out.variables[static_cast<std::size_t>(i) - 1]);

    // phase 7: wires of the false literals, then the remaining OR gates
    for (int i = 1; i <= n; ++i) {
        const LiteralWire& w = s.wire(i, !assignment[static_cast<std::size_t>(i) - 1]);
        s.contract_wire(s.wire_root(i, !assignment[static_cast<std::size_t>(i) - 1]), w,
                        [&](const VerticalSet& leaf) {
            // full collapse when the OR gate fed by this leaf is already gone
            for (int j = 0; j < m; ++j) {
                const ClauseHandle& cl = out.clauses[static_cast<std::size_t>(j)];
                bool feeds1 = cl.or1.link1[0] == leaf.x || cl.or1.link2[0] == leaf.x;
                bool feeds2 = !cl.reduced && cl.or2.link2[0] == leaf.x;
                if (feeds1)
                    return s.or1_done[static_cast<std::size_t>(j)];
                if (feeds2)
                    return s.or2_done[static_cast<std::size_t>(j)];
            }
            throw TwwError("synthesize_witness: leaf feeds no clause");
        });
    }
    std::vector<int> newly_contracted;
    for (int j = 0; j < m; ++j) {
        const ClauseHandle& cl = out.clauses[static_cast<std::size_t>(j)];
        if (s.or1_done[static_cast<std::size_t>(j)])
            continue;
        contract_or(s.sb, cl.or1, 1);
        s.or1_done[static_cast<std::size_t>(j)] = true;
        newly_contracted.push_back(j);
    }
    for (int j : newly_contracted) {
        const ClauseHandle& cl = out.clauses[static_cast<std::size_t>(j)];
        for (Vid lx : {cl.or1.link1[0], cl.or1.link2[0]}) {
            const VerticalSet* leaf = s.leaf_by_x.at(lx);
            contract_fence_onto(s.sb, leaf->fence, s.sb.current(leaf->x));
        }
    }
    for (int j : newly_contracted) {
        const ClauseHandle& cl = out.clauses[static_cast<std::size_t>(j)];
        s.collapse(cl.reduced ? cl.out : cl.mid);
    }

    // phase 8: chains between the two OR gates where the third literal was
    // satisfied early
    for (int j = 0; j < m; ++j) {
        const ClauseHandle& cl = out.clauses[static_cast<std::size_t>(j)];
        if (cl.reduced)
            continue;
        if (!s.primed(cl.prime)) {
            s.collapse_chain(cl.chain);
            s.collapse(cl.prime);
        }
    }

    if (phase_boundary)
        *phase_boundary = s.sb.step_count();

    // terminal phase: the residual is an all-red long subdivision
    const Trigraph& residual = s.sb.graph();
    if (residual.black_edge_count() != 0)
        throw TwwError("synthesize_witness: black edges survive the gadget phases");
    SubdivisionInstance inst = detect_subdivision(residual);
    ContractionSequence tail = subdivision_sequence(inst);
    std::map<Vid, Vid> remap;
    auto resolve = [&](Vid v) {
        auto it = remap.find(v);
        return it == remap.end() ? v : it->second;
    };
    for (const auto& st : tail.steps)
        remap[st.result] = s.sb.contract(resolve(st.left), resolve(st.right));

    return std::move(s.sb).take();
}

Trigraph residual_red_graph(const ReductionOutput& out, const ContractionSequence& prefix) {
    Trigraph residual = replay(prefix);
    if (residual.black_edge_count() != 0)
        throw TwwError("residual_red_graph: prefix is not at the phase boundary (black edges remain)");
    if (residual.max_red_degree() > 4)
        throw TwwError("residual_red_graph: red degree exceeds 4");
    int n = out.cnf.n_vars;
    int m = static_cast<int>(out.cnf.clauses.size());
    SubdivisionInstance inst = detect_subdivision(residual);
    if (inst.branch_count() > 5 * n + 3 * m)
        throw TwwError("residual_red_graph: too many branch vertices");
    for (const auto& e : inst.edges)
        if (static_cast<int>(e.inner.size()) < out.chain_length)
            throw TwwError("residual_red_graph: junctions closer than L");
    return residual;
}

std::string to_manifest_json(const ReductionOutput& out) {
    nlohmann::json j;
    j["format"] = "tww-manifest-v1";
    j["kind"] = "reduction";
    j["n_vars"] = out.cnf.n_vars;
    j["clauses"] = out.cnf.clauses;
    j["chain_length"] = out.chain_length;
    j["graph_digest"] = trigraph_digest(out.graph);
    j["stats"] = {{"vertices", out.stats.vertices},
                  {"black_edges", out.stats.black_edges},
                  {"red_edges", out.stats.red_edges},
                  {"fences", out.stats.fences},
                  {"vertical_sets", out.stats.vertical_sets}};
    nlohmann::json roles = nlohmann::json::object();
    for (const auto& [path, v] : out.manifest.roles())
        roles[path] = v;
    j["roles"] = std::move(roles);
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : out.digraph.nodes)
        nodes.push_back({{"path", node.path}, {"vertical", node.vertical}});
    j["digraph"] = {{"nodes", std::move(nodes)}, {"arcs", out.digraph.arcs}};
    return j.dump(2);
}

ReductionOutput reduction_from_manifest(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (j.value("format", "") != "tww-manifest-v1" || j.value("kind", "") != "reduction")
        throw FormatError("manifest: not a tww reduction manifest");
    CnfInstance cnf;
    cnf.n_vars = j.at("n_vars").get<int>();
    cnf.clauses = j.at("clauses").get<std::vector<std::vector<int>>>();
    ReductionOutput out = build_instance(cnf);
    if (j.contains("graph_digest") &&
        j.at("graph_digest").get<std::uint64_t>() != trigraph_digest(out.graph))
        throw FormatError("manifest: graph digest mismatch (stale manifest?)");
    return out;
}

} // namespace tww
