#ifndef TWW_GADGETS_HPP
#define TWW_GADGETS_HPP

#include "tww/sequence.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>

namespace tww {

// Flat role-path -> vertex id registry, e.g. "var[3].top.fence.a[1]".
class Manifest {
  public:
    void set(const std::string& path, Vid v);
    Vid at(const std::string& path) const;
    bool contains(const std::string& path) const { return roles_.count(path) > 0; }
    const std::map<std::string, Vid>& roles() const { return roles_; }

  private:
    std::map<std::string, Vid> roles_;
};

// The 12-vertex fence: black 6-cycles on A and B plus the bridge b1-a6, red
// path b1 a1 b2 a2 ... b6 a6, A fully adjacent to the attached set.
struct FenceHandle {
    std::array<Vid, 6> a{}, b{};
    std::vector<Vid> attached; // S
    std::string path;

    std::vector<Vid> all() const;
};

// A fence-enclosed set: the members S plus the fence around them.
struct EnclosedSet {
    std::vector<Vid> members;
    FenceHandle fence;
    int node = -1; // propagation digraph node

    std::vector<Vid> with_fence() const;
};

struct VerticalSet {
    Vid x = 0, y = 0;
    FenceHandle fence;
    int node = -1;
    std::string path;

    EnclosedSet enclosed() const;
};

struct PropagationDigraph {
    struct Node {
        std::string path;
        bool vertical = false;
    };
    std::vector<Node> nodes;
    std::vector<std::pair<int, int>> arcs;

    int out_degree(int v) const;
    int in_degree(int v) const;
};

struct OrHandle {
    Vid a = 0, b = 0, c = 0, d = 0, e = 0;
    FenceHandle fence_ab, fence_cd, fence_outer;
    std::vector<Vid> link1, link2; // what a, resp. c, is pair-linked to
    int node = -1;
    std::string path;

    EnclosedSet enclosed() const; // {e} + V + V' + their fences, under fence_outer
};

struct AndHandle {
    VerticalSet in1, in2, out;
};

struct VariableHandle {
    Vid x = 0, top = 0, bot = 0;
    FenceHandle fence; // around {x, top, bot}
    OrHandle top_or, bot_or;
    Vid f_top = 0, g_top = 0, f_bot = 0, g_bot = 0;
    FenceHandle fence_top_inner, fence_top_outer; // F'^T on T'+f, F^T on T
    FenceHandle fence_bot_inner, fence_bot_outer;
    VerticalSet hg1, hg2;          // half-guards
    VerticalSet out_pos, out_neg;  // roots of the literal wires
    int node_top = -1, node_bot = -1;
    std::string path;

    EnclosedSet top_set() const; // T with its outer fence
    EnclosedSet bot_set() const; // U with its outer fence
};

struct ClauseHandle {
    // three-literal clauses: two OR gates joined by a long chain; two-literal
    // clauses: a single OR gate (or2/prime/chain absent)
    OrHandle or1, or2;
    VerticalSet mid, prime;          // V and V'
    std::vector<VerticalSet> chain;  // fresh sets strung between V and V'
    VerticalSet out;                 // V^4
    bool reduced = false;            // true for the two-literal form
    std::string path;
};

class GadgetBuilder {
  public:
    Trigraph& graph() { return g_; }
    const Trigraph& graph() const { return g_; }
    Manifest& manifest() { return manifest_; }
    const PropagationDigraph& digraph() const { return digraph_; }
    const std::vector<FenceHandle>& fences() const { return fences_; }

    Vid fresh(const std::string& role);
    FenceHandle attach_fence(const std::vector<Vid>& s, const std::string& prefix);
    VerticalSet vertical_set(const std::string& prefix);

    int register_node(const std::string& path, bool vertical);
    // all edges between (from.members + from.fence) and to.x
    void guard_arc(const EnclosedSet& from, const VerticalSet& to);
    void add_propagation_arc(const VerticalSet& from, const VerticalSet& to);
    void pair_link(Vid v, Vid p, Vid q); // black edges v-p, v-q

    // inserts chain_length-2 fresh vertical sets between from and to
    std::vector<VerticalSet> long_chain(const VerticalSet& from, const VerticalSet& to,
                                        int chain_length, const std::string& prefix);

    OrHandle or_gadget(const VerticalSet& in1, const VerticalSet& in2, const VerticalSet& out,
                       const std::string& prefix);
    AndHandle and_gadget(const std::string& prefix);
    VariableHandle variable_gadget(const std::string& prefix);
    ClauseHandle clause_gadget(const VerticalSet& in1, const VerticalSet& in2,
                               const VerticalSet& in3, int chain_length, const std::string& prefix);
    ClauseHandle clause_gadget2(const VerticalSet& in1, const VerticalSet& in2,
                                const std::string& prefix); // reduced two-literal form

  private:
    void consume_input(const VerticalSet& vs);

    Trigraph g_;
    Manifest manifest_;
    PropagationDigraph digraph_;
    std::vector<FenceHandle> fences_;
    std::set<std::string> consumed_inputs_;
};

// Definition 4.4 checks; on success x_set is the computed X.
struct AttachmentCheck {
    bool ok = false;
    std::set<Vid> x_set;
    int failed_bullet = 0; // 1..3 per the definition, 4 = red component, 5 = structure
    Vid witness = 0;
    std::string message;
};

AttachmentCheck check_attachment_rule(const Trigraph& g, const FenceHandle& fence);

// The eleven fence contractions (a1b1, then pairwise along both cycles,
// ending a+c1 and +b); the attached set must already be one vertex of red
// degree at most 3 and the fence untouched.
Vid contract_fence(SequenceBuilder& sb, const FenceHandle& fence);
// contract_fence followed by merging the pendant vertex with s
Vid contract_fence_onto(SequenceBuilder& sb, const FenceHandle& fence, Vid s);

struct OrCore {
    Vid a = 0, b = 0, c = 0, d = 0, e = 0;
    FenceHandle fence_ab, fence_cd, fence_outer;
    std::vector<Vid> link1, link2;
};

OrCore core_of(const OrHandle& h);

// OR collapse in proof order; side 1 means the pair linked to a was contracted.
Vid contract_or(SequenceBuilder& sb, const OrCore& core, int side);
Vid contract_or(SequenceBuilder& sb, const OrHandle& h, int side);

// x with top (or bot) first, then T (resp. U) and both its fences.
Vid contract_variable_half(SequenceBuilder& sb, const VariableHandle& var, bool top);
// after the half-guards have been folded to single vertices
Vid contract_variable_rest(SequenceBuilder& sb, const VariableHandle& var);

// pair, fence, pendant merge
Vid collapse_vertical(SequenceBuilder& sb, const VerticalSet& vs);

struct FirstStepReport {
    bool ok = false;
    int inside_pairs = 0, aa_bb_pairs = 0, ab_pairs = 0;
    int xs_pairs = 0, ys_pairs = 0, xy_pairs = 0;
    std::string message;
};

// First-contraction battery around a fence: every A x A / B x B merge
// has red degree >= 5, every A x B merge has red degree >= 3 within F, and
// X x S, Y x S, X x Y merges have red degree >= 6, 6, 12.
FirstStepReport exhaustive_first_step_check(const Trigraph& g, const FenceHandle& fence);

struct ExploreResult {
    bool exhausted = false;
    std::uint64_t states = 0;
    std::uint64_t hits = 0;
};

// Best-effort DFS over all partial d-sequences (canonical-state memoized);
// calls the predicate on every reached trigraph and counts hits.
ExploreResult explore_partial_sequences(
    const Trigraph& g, int d, std::uint64_t max_states,
    const std::function<bool(const Trigraph&, const PartitionView&)>& predicate);

} // namespace tww

#endif
