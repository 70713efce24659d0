#ifndef TWW_SUBDIVISION_HPP
#define TWW_SUBDIVISION_HPP

#include "tww/sequence.hpp"

namespace tww {

struct SubdividedEdge {
    Vid from = 0, to = 0;   // branch vertices, from < to
    std::vector<Vid> inner; // path vertices ordered from -> to
};

// A subdivided trigraph together with the registry of its paths.
struct SubdivisionInstance {
    Trigraph subdivided;              // G
    std::vector<Vid> branch_vertices; // the vertices of H inside G, sorted
    std::vector<SubdividedEdge> edges;

    int branch_count() const { return static_cast<int>(branch_vertices.size()); }
    // inner vertices required per path for the 4-sequence: 2*ceil(log2 n) - 1
    int required_inner() const;
};

// Replace every edge uv of h by a path u, s1, ..., s_len, v of the same
// color. lengths is keyed by (min(u,v), max(u,v)); every edge needs an
// entry >= 1.
SubdivisionInstance subdivide(const Trigraph& h, const std::map<std::pair<Vid, Vid>, int>& lengths);
SubdivisionInstance subdivide_uniform(const Trigraph& h, int len);

// Recover the path registry of an already subdivided trigraph: branch
// vertices are those of total degree != 2. Rejects components without a
// branch vertex (plain cycles) and paths closing on one branch vertex.
SubdivisionInstance detect_subdivision(const Trigraph& g);

// The working supertrigraph: G plus a virtual full binary tree, red except the
// edges incident to leaves, with padding leaves up to a power of two.
struct Supertrigraph {
    Trigraph graph;
    int leaf_slots = 0; // n padded to the next power of two
    int height = 0;     // log2(leaf_slots)
    // heap-indexed slots: 1..leaf_slots-1 internal nodes,
    // leaf_slots..2*leaf_slots-1 leaves in branch-vertex order
    std::vector<Vid> slot_vertex;
};

Supertrigraph build_supertrigraph(const SubdivisionInstance& inst);

// Drives the schedule: normalize every path to exactly 2 log n - 1 inner
// vertices, zip each subdivided edge against the leaf-root-leaf walk, then
// fold the residual red tree.
class SubdivisionContractor {
  public:
    explicit SubdivisionContractor(const SubdivisionInstance& inst);

    std::vector<ContractionStep> normalize_path(std::size_t edge_index);
    std::vector<ContractionStep> zip_edge(std::size_t edge_index);
    std::vector<ContractionStep> contract_tree();

    const Supertrigraph& super() const { return super_; }
    const Trigraph& graph() const { return sb_.graph(); }
    Vid current(Vid v) const { return sb_.current(v); }
    ContractionSequence finish() &&; // full sequence over G'

  private:
    SubdivisionInstance inst_;
    Supertrigraph super_;
    SequenceBuilder sb_;
    std::vector<std::vector<Vid>> inner_; // current inner ids per edge
    std::vector<bool> normalized_, zipped_;
};

// The end-to-end schedule, restricted back to G itself.
ContractionSequence subdivision_sequence(const SubdivisionInstance& inst);

} // namespace tww

#endif
