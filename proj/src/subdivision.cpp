#include "tww/subdivision.hpp"

#include "tww/solver.hpp"

#include <algorithm>

namespace tww {

namespace {

int ceil_log2(int n) {
    int h = 0;
    int p = 1;
    while (p < n) {
        p <<= 1;
        ++h;
    }
    return h;
}

void check_red_pattern(const Trigraph& g) {
    if (g.max_red_degree() > 4)
        throw TwwError("subdivision: red degree exceeds 4");
    for (Vid v : g.vertices())
        if (g.red_degree(v) == 4 && !g.black_neighbors(v).empty())
            throw TwwError("subdivision: vertex of red degree 4 has a black neighbor");
}

} // namespace

int SubdivisionInstance::required_inner() const {
    int n = branch_count();
    if (n <= 1)
        return 0;
    return 2 * ceil_log2(n) - 1;
}

SubdivisionInstance subdivide(const Trigraph& h, const std::map<std::pair<Vid, Vid>, int>& lengths) {
    SubdivisionInstance inst;
    inst.branch_vertices = h.vertices();
    Trigraph g;
    for (Vid v : inst.branch_vertices)
        g.add_vertex(v);

    std::vector<std::tuple<Vid, Vid, bool>> all_edges; // (u, v, red)
    for (auto [u, v] : h.black_edges())
        all_edges.emplace_back(u, v, false);
    for (auto [u, v] : h.red_edges())
        all_edges.emplace_back(u, v, true);
    std::sort(all_edges.begin(), all_edges.end());

    Vid next = h.max_id() + 1;
    for (auto [u, v, red] : all_edges) {
        auto it = lengths.find({u, v});
        if (it == lengths.end() || it->second < 1)
            throw TwwError("subdivide: edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") needs a subdivision length >= 1");
        SubdividedEdge e;
        e.from = u;
        e.to = v;
        Vid prev = u;
        for (int k = 0; k < it->second; ++k) {
            Vid s = next++;
            g.add_vertex(s);
            e.inner.push_back(s);
            if (red)
                g.add_red(prev, s);
            else
                g.add_black(prev, s);
            prev = s;
        }
        if (red)
            g.add_red(prev, v);
        else
            g.add_black(prev, v);
        inst.edges.push_back(std::move(e));
    }
    inst.subdivided = std::move(g);
    return inst;
}

SubdivisionInstance subdivide_uniform(const Trigraph& h, int len) {
    std::map<std::pair<Vid, Vid>, int> lengths;
    for (auto [u, v] : h.black_edges())
        lengths[{u, v}] = len;
    for (auto [u, v] : h.red_edges())
        lengths[{u, v}] = len;
    return subdivide(h, lengths);
}

SubdivisionInstance detect_subdivision(const Trigraph& g) {
    SubdivisionInstance inst;
    inst.subdivided = g;
    std::set<Vid> branch;
    for (Vid v : g.vertices())
        if (g.degree(v) != 2)
            branch.insert(v);
    inst.branch_vertices.assign(branch.begin(), branch.end());

    std::set<Vid> visited_inner;
    for (Vid b : inst.branch_vertices) {
        for (Vid x : g.total_neighbors(b)) {
            if (branch.count(x)) {
                if (b < x) // plain branch-to-branch edge
                    inst.edges.push_back({b, x, {}});
                continue;
            }
            if (visited_inner.count(x))
                continue; // walked from the other side already
            SubdividedEdge e;
            Vid prev = b, cur = x;
            while (!branch.count(cur)) {
                e.inner.push_back(cur);
                visited_inner.insert(cur);
                Vid next = 0;
                for (Vid y : g.total_neighbors(cur))
                    if (y != prev)
                        next = y;
                if (next == 0)
                    throw TwwError("detect_subdivision: dangling path"); // unreachable: deg 2
                prev = cur;
                cur = next;
            }
            if (cur == b)
                throw TwwError("detect_subdivision: path closes on a single branch vertex");
            e.from = b;
            e.to = cur;
            if (e.from > e.to) {
                std::swap(e.from, e.to);
                std::reverse(e.inner.begin(), e.inner.end());
            }
            inst.edges.push_back(std::move(e));
        }
    }
    // a component with every degree equal to 2 is a bare cycle
    std::size_t covered = branch.size() + visited_inner.size();
    if (covered != static_cast<std::size_t>(g.n()))
        throw TwwError("detect_subdivision: component without a branch vertex");

    std::sort(inst.edges.begin(), inst.edges.end(), [](const SubdividedEdge& a, const SubdividedEdge& b) {
        return std::tie(a.from, a.to, a.inner) < std::tie(b.from, b.to, b.inner);
    });
    return inst;
}

Supertrigraph build_supertrigraph(const SubdivisionInstance& inst) {
    Supertrigraph sup;
    int n = inst.branch_count();
    int n_pad = 1;
    while (n_pad < n)
        n_pad <<= 1;
    sup.leaf_slots = n_pad;
    sup.height = ceil_log2(n_pad);
    sup.graph = inst.subdivided;
    sup.slot_vertex.assign(static_cast<std::size_t>(2 * n_pad), 0);

    Vid next = sup.graph.max_id() + 1;
    for (int slot = 1; slot < n_pad; ++slot) {
        Vid v = next++;
        sup.graph.add_vertex(v);
        sup.slot_vertex[static_cast<std::size_t>(slot)] = v;
    }
    // red tree edges between internal nodes only; leaf edges stay absent
    for (int slot = 2; slot < n_pad; ++slot)
        sup.graph.add_red(sup.slot_vertex[static_cast<std::size_t>(slot)],
                          sup.slot_vertex[static_cast<std::size_t>(slot / 2)]);
    for (int k = 0; k < n_pad; ++k) {
        Vid v;
        if (k < n) {
            v = inst.branch_vertices[static_cast<std::size_t>(k)];
        } else {
            v = next++;
            sup.graph.add_vertex(v); // padding leaf
        }
        sup.slot_vertex[static_cast<std::size_t>(n_pad + k)] = v;
    }
    return sup;
}

SubdivisionContractor::SubdivisionContractor(const SubdivisionInstance& inst)
    : inst_(inst), super_(build_supertrigraph(inst)), sb_(super_.graph) {
    inner_.reserve(inst_.edges.size());
    for (const auto& e : inst_.edges)
        inner_.push_back(e.inner);
    normalized_.assign(inst_.edges.size(), false);
    zipped_.assign(inst_.edges.size(), false);
}

std::vector<ContractionStep> SubdivisionContractor::normalize_path(std::size_t edge_index) {
    if (edge_index >= inst_.edges.size())
        throw TwwError("normalize_path: bad edge index");
    auto& inner = inner_[edge_index];
    int target = 2 * super_.height - 1;
    if (static_cast<int>(inner.size()) < target)
        throw TwwError("normalize_path: path too short (" + std::to_string(inner.size()) +
                       " inner vertices, need " + std::to_string(target) + ")");
    std::size_t before = sb_.step_count();
    while (static_cast<int>(inner.size()) > target) {
        std::size_t mid = inner.size() / 2;
        Vid w = sb_.contract(inner[mid - 1], inner[mid]);
        inner[mid - 1] = w;
        inner.erase(inner.begin() + static_cast<std::ptrdiff_t>(mid));
    }
    normalized_[edge_index] = true;
    return {sb_.steps().begin() + static_cast<std::ptrdiff_t>(before), sb_.steps().end()};
}

std::vector<ContractionStep> SubdivisionContractor::zip_edge(std::size_t edge_index) {
    if (edge_index >= inst_.edges.size())
        throw TwwError("zip_edge: bad edge index");
    if (!normalized_[edge_index])
        throw TwwError("zip_edge: path not normalized");
    if (zipped_[edge_index])
        throw TwwError("zip_edge: already zipped");
    const auto& e = inst_.edges[edge_index];
    const auto& inner = inner_[edge_index];
    int z = 2 * super_.height - 1;
    if (static_cast<int>(inner.size()) != z)
        throw TwwError("zip_edge: path has wrong length");

    auto leaf_slot = [&](Vid v) {
        auto it = std::lower_bound(inst_.branch_vertices.begin(), inst_.branch_vertices.end(), v);
        int idx = static_cast<int>(it - inst_.branch_vertices.begin());
        return super_.leaf_slots + idx;
    };
    int su = leaf_slot(e.from), sv = leaf_slot(e.to);

    // walk: ancestors of leaf i up to the root, then back down to leaf j
    std::vector<Vid> walk;
    for (int h = 1; h <= super_.height; ++h)
        walk.push_back(super_.slot_vertex[static_cast<std::size_t>(su >> h)]);
    for (int k = 1; k < super_.height; ++k)
        walk.push_back(super_.slot_vertex[static_cast<std::size_t>(sv >> (super_.height - k))]);

    std::size_t before = sb_.step_count();
    for (int h = 0; h < z; ++h)
        sb_.contract(walk[static_cast<std::size_t>(h)], inner[static_cast<std::size_t>(h)]);
    zipped_[edge_index] = true;
    return {sb_.steps().begin() + static_cast<std::ptrdiff_t>(before), sb_.steps().end()};
}

std::vector<ContractionStep> SubdivisionContractor::contract_tree() {
    for (std::size_t i = 0; i < inst_.edges.size(); ++i)
        if (!zipped_[i])
            throw TwwError("contract_tree: not all edges zipped");
    std::size_t before = sb_.step_count();

    // residual component around the (former) root is a red tree
    const Trigraph& w = sb_.graph();
    if (super_.leaf_slots >= 2) {
        Vid root = sb_.current(super_.slot_vertex[1]);
        std::set<Vid> comp{root};
        std::vector<Vid> stack{root};
        while (!stack.empty()) {
            Vid x = stack.back();
            stack.pop_back();
            for (Vid y : w.total_neighbors(x))
                if (comp.insert(y).second)
                    stack.push_back(y);
        }
        if (comp.size() >= 2) {
            Trigraph tree = w.induced(comp);
            ContractionSequence ts = tree_sequence(tree);
            std::map<Vid, Vid> remap;
            for (const auto& st : ts.steps) {
                auto res = [&](Vid v) {
                    auto it = remap.find(v);
                    return it == remap.end() ? v : it->second;
                };
                remap[st.result] = sb_.contract(res(st.left), res(st.right));
            }
        }
    }
    // fold whatever is left (isolated branch vertices, padding leaves)
    while (sb_.graph().n() > 1) {
        auto verts = sb_.graph().vertices();
        sb_.contract(verts[0], verts[1]);
    }
    return {sb_.steps().begin() + static_cast<std::ptrdiff_t>(before), sb_.steps().end()};
}

ContractionSequence SubdivisionContractor::finish() && {
    return std::move(sb_).take();
}

ContractionSequence subdivision_sequence(const SubdivisionInstance& inst) {
    check_red_pattern(inst.subdivided);
    int need = inst.required_inner();
    for (const auto& e : inst.edges)
        if (static_cast<int>(e.inner.size()) < need)
            throw TwwError("subdivision_sequence: edge (" + std::to_string(e.from) + "," +
                           std::to_string(e.to) + ") subdivided fewer than " + std::to_string(need) +
                           " times");

    if (inst.subdivided.n() == 0)
        return {};

    SubdivisionContractor c(inst);
    for (std::size_t i = 0; i < inst.edges.size(); ++i)
        c.normalize_path(i);
    for (std::size_t i = 0; i < inst.edges.size(); ++i)
        c.zip_edge(i);
    c.contract_tree();
    ContractionSequence full = std::move(c).finish();

    auto verts = inst.subdivided.vertices();
    return restrict_to(full, std::set<Vid>(verts.begin(), verts.end()));
}

} // namespace tww
