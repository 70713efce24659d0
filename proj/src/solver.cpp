#include "tww/solver.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

namespace tww {

void SolverBudget::validate() const {
    if (max_nodes == 0 || max_seconds <= 0 || d_cap < 0)
        throw TwwError("solver budget fields must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

struct Part {
    Vid current;
    std::vector<Vid> originals; // sorted
};

std::string canonical_key(const std::vector<Part>& parts) {
    std::vector<const Part*> order;
    order.reserve(parts.size());
    for (const auto& p : parts)
        order.push_back(&p);
    std::sort(order.begin(), order.end(),
              [](const Part* a, const Part* b) { return a->originals.front() < b->originals.front(); });
    std::string key;
    for (const Part* p : order) {
        for (Vid v : p->originals) {
            key += std::to_string(v);
            key += ',';
        }
        key += ';';
    }
    return key;
}

struct Search {
    int d;
    SolverBudget budget;
    Clock::time_point deadline;
    std::uint64_t nodes = 0;
    bool exhausted_budget = false;
    std::unordered_set<std::string> failed;
    Vid base_max_id;
    std::vector<ContractionStep> path;

    bool dfs(const Trigraph& g, std::vector<Part>& parts) {
        if (g.n() <= 1)
            return true;
        std::string key = canonical_key(parts);
        if (failed.count(key))
            return false;
        if (++nodes > budget.max_nodes || Clock::now() > deadline) {
            exhausted_budget = true;
            return false;
        }

        // candidate pairs ordered by the smallest original ids they touch
        std::vector<std::pair<std::size_t, std::size_t>> cand;
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                cand.emplace_back(i, j);
        std::sort(cand.begin(), cand.end(), [&](const auto& a, const auto& b) {
            Vid a1 = std::min(parts[a.first].originals.front(), parts[a.second].originals.front());
            Vid a2 = std::max(parts[a.first].originals.front(), parts[a.second].originals.front());
            Vid b1 = std::min(parts[b.first].originals.front(), parts[b.second].originals.front());
            Vid b2 = std::max(parts[b.first].originals.front(), parts[b.second].originals.front());
            return std::tie(a1, a2) < std::tie(b1, b2);
        });

        Vid fresh = base_max_id + static_cast<Vid>(path.size()) + 1;
        for (auto [i, j] : cand) {
            Trigraph g2 = g.contracted(parts[i].current, parts[j].current, fresh);
            if (g2.max_red_degree() > d)
                continue;
            std::vector<Part> parts2;
            parts2.reserve(parts.size() - 1);
            Part merged;
            merged.current = fresh;
            std::merge(parts[i].originals.begin(), parts[i].originals.end(),
                       parts[j].originals.begin(), parts[j].originals.end(),
                       std::back_inserter(merged.originals));
            for (std::size_t k = 0; k < parts.size(); ++k)
                if (k != i && k != j)
                    parts2.push_back(parts[k]);
            parts2.push_back(std::move(merged));

            path.push_back({parts[i].current, parts[j].current, fresh});
            if (dfs(g2, parts2))
                return true;
            path.pop_back();
            if (exhausted_budget)
                return false;
        }
        failed.insert(std::move(key));
        return false;
    }
};

} // namespace

DecideResult decide_at_most(const Trigraph& g, int d, const SolverBudget& budget) {
    budget.validate();
    DecideResult res;
    if (g.max_red_degree() > d) {
        res.status = DecideStatus::no;
        return res;
    }
    if (g.n() <= 1) {
        res.status = DecideStatus::yes;
        res.witness.base = g;
        return res;
    }

    Search s;
    s.d = d;
    s.budget = budget;
    s.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(budget.max_seconds));
    s.base_max_id = g.max_id();

    std::vector<Part> parts;
    for (Vid v : g.vertices())
        parts.push_back({v, {v}});

    bool found = s.dfs(g, parts);
    res.nodes = s.nodes;
    if (found) {
        res.status = DecideStatus::yes;
        res.witness.base = g;
        res.witness.steps = s.path;
        res.witness.partial = false;
    } else if (s.exhausted_budget) {
        res.status = DecideStatus::unknown;
    } else {
        res.status = DecideStatus::no;
    }
    return res;
}

SolveResult twin_width_exact(const Trigraph& g, const SolverBudget& budget) {
    budget.validate();
    SolveResult res;
    if (g.n() <= 1) {
        res.status = SolveStatus::exact;
        res.value = g.max_red_degree();
        res.witness.base = g;
        return res;
    }
    for (int d = g.max_red_degree(); d <= budget.d_cap; ++d) {
        DecideResult r = decide_at_most(g, d, budget);
        res.nodes += r.nodes;
        if (r.status == DecideStatus::yes) {
            res.status = SolveStatus::exact;
            res.value = d;
            res.witness = std::move(r.witness);
            return res;
        }
        if (r.status == DecideStatus::unknown)
            break;
    }
    SolveResult greedy = greedy_upper_bound(g);
    res.status = SolveStatus::budget_exhausted;
    res.value = greedy.value;
    res.witness = std::move(greedy.witness);
    return res;
}

ContractionSequence tree_sequence(const Trigraph& t) {
    int n = t.n();
    if (n == 0)
        throw TwwError("tree_sequence: empty trigraph is not a tree");
    if (t.black_edge_count() + t.red_edge_count() != static_cast<std::size_t>(n - 1))
        throw TwwError("tree_sequence: input is not a tree");

    auto verts = t.vertices();
    Vid root = verts.front();
    std::map<Vid, Vid> parent;
    std::map<Vid, std::set<Vid>> children;
    std::map<Vid, int> depth;
    std::map<Vid, Vid> minorig;
    {
        std::vector<Vid> queue{root};
        std::set<Vid> seen{root};
        depth[root] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            Vid v = queue[qi];
            children[v];
            minorig[v] = v;
            for (Vid u : t.total_neighbors(v)) {
                if (seen.insert(u).second) {
                    parent[u] = v;
                    children[v].insert(u);
                    depth[u] = depth[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        if (seen.size() != static_cast<std::size_t>(n))
            throw TwwError("tree_sequence: input is not connected");
    }

    SequenceBuilder sb(t);
    auto is_leaf = [&](Vid v) { return children.at(v).empty(); };

    while (sb.graph().n() > 1) {
        // rule 1: two leaves under the same parent
        Vid best_parent = 0;
        for (const auto& [p, ch] : children) {
            int leaves = 0;
            for (Vid c : ch)
                if (is_leaf(c))
                    ++leaves;
            if (leaves >= 2 && (best_parent == 0 || minorig[p] < minorig[best_parent]))
                best_parent = p;
        }
        if (best_parent != 0) {
            std::vector<Vid> leaf_children;
            for (Vid c : children[best_parent])
                if (is_leaf(c))
                    leaf_children.push_back(c);
            std::sort(leaf_children.begin(), leaf_children.end(),
                      [&](Vid a, Vid b) { return minorig[a] < minorig[b]; });
            Vid u = leaf_children[0], v = leaf_children[1];
            Vid w = sb.contract(u, v);
            children[best_parent].erase(u);
            children[best_parent].erase(v);
            children[best_parent].insert(w);
            parent[w] = best_parent;
            children[w];
            depth[w] = depth[u];
            minorig[w] = std::min(minorig[u], minorig[v]);
            children.erase(u);
            children.erase(v);
            parent.erase(u);
            parent.erase(v);
            minorig.erase(u);
            minorig.erase(v);
            continue;
        }

        // rule 2: a deepest leaf with its parent (which then has a single child)
        Vid deepest = 0;
        for (const auto& [v, ch] : children) {
            if (!ch.empty() || v == root)
                continue;
            if (deepest == 0 || depth[v] > depth[deepest] ||
                (depth[v] == depth[deepest] && minorig[v] < minorig[deepest]))
                deepest = v;
        }
        if (deepest == 0)
            throw TwwError("tree_sequence: internal schedule error");
        Vid p = parent[deepest];
        Vid w = sb.contract(deepest, p);
        Vid new_min = std::min(minorig[deepest], minorig[p]);
        if (p == root) {
            root = w;
            depth[w] = 0;
        } else {
            Vid gp = parent[p];
            children[gp].erase(p);
            children[gp].insert(w);
            parent[w] = gp;
            depth[w] = depth[p];
        }
        children[w];
        minorig[w] = new_min;
        children.erase(deepest);
        children.erase(p);
        parent.erase(deepest);
        parent.erase(p);
        minorig.erase(deepest);
        minorig.erase(p);
    }
    return std::move(sb).take();
}

SolveResult greedy_upper_bound(const Trigraph& g) {
    SolveResult res;
    SequenceBuilder sb(g);
    while (sb.graph().n() > 1) {
        const Trigraph& cur = sb.graph();
        auto verts = cur.vertices();
        Vid fresh = cur.max_id() + 1;
        int best_val = -1;
        std::pair<Vid, Vid> best_pair{0, 0};
        for (std::size_t i = 0; i < verts.size(); ++i) {
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                Trigraph probe = cur.contracted(verts[i], verts[j], fresh);
                int val = probe.max_red_degree();
                if (best_val < 0 || val < best_val) {
                    best_val = val;
                    best_pair = {verts[i], verts[j]};
                }
            }
        }
        sb.contract(best_pair.first, best_pair.second);
    }
    res.status = SolveStatus::upper_bound_only;
    res.value = sb.max_width_seen();
    res.witness = std::move(sb).take();
    return res;
}

} // namespace tww
