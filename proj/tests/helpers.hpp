#ifndef TWW_TESTS_HELPERS_HPP
#define TWW_TESTS_HELPERS_HPP

#include "tww/sequence.hpp"
#include "tww/trigraph.hpp"

#include <random>

namespace tww::testing {

inline Trigraph complete_graph(int n) {
    Trigraph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            g.add_black(u, v);
    return g;
}

inline Trigraph path_graph(int n) {
    Trigraph g(n);
    for (int v = 1; v < n; ++v)
        g.add_black(v, v + 1);
    return g;
}

inline Trigraph cycle_graph(int n) {
    Trigraph g = path_graph(n);
    if (n >= 3)
        g.add_black(n, 1);
    return g;
}

// The 7-vertex example graph: a..g mapped to 1..7, 13 black edges.
inline Trigraph example_seven() {
    Trigraph g(7);
    // ab ad af bc bd be bf ce cf de dg eg fg
    const std::pair<int, int> edges[] = {{1, 2}, {1, 4}, {1, 6}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
                                         {3, 5}, {3, 6}, {4, 5}, {4, 7}, {5, 7}, {6, 7}};
    for (auto [u, v] : edges)
        g.add_black(u, v);
    return g;
}

// Its 2-sequence: ef, ad, b+ef, ad+g, bef+c, final.
inline ContractionSequence example_seven_sequence() {
    ContractionSequence seq;
    seq.base = example_seven();
    seq.steps = {{5, 6, 8}, {1, 4, 9}, {2, 8, 10}, {9, 7, 11}, {10, 3, 12}, {11, 12, 13}};
    return seq;
}

inline Trigraph random_graph(int n, double p, std::mt19937& rng) {
    Trigraph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (coin(rng))
                g.add_black(u, v);
    return g;
}

inline Trigraph random_tree(int n, std::mt19937& rng, bool red = false) {
    Trigraph g(n);
    for (int v = 2; v <= n; ++v) {
        std::uniform_int_distribution<int> pick(1, v - 1);
        int u = pick(rng);
        if (red)
            g.add_red(u, v);
        else
            g.add_black(u, v);
    }
    return g;
}

// random tree with every degree at most max_deg
inline Trigraph random_bounded_tree(int n, int max_deg, std::mt19937& rng, bool red) {
    Trigraph g(n);
    std::vector<int> deg(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 2; v <= n; ++v) {
        std::vector<int> pool;
        for (int u = 1; u < v; ++u)
            if (deg[static_cast<std::size_t>(u)] < max_deg)
                pool.push_back(u);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        int u = pool[pick(rng)];
        if (red)
            g.add_red(u, v);
        else
            g.add_black(u, v);
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    return g;
}

// random full contraction sequence, fresh ids n+1, ...
inline ContractionSequence random_sequence(const Trigraph& g, std::mt19937& rng) {
    ContractionSequence seq;
    seq.base = g;
    Trigraph cur = g;
    Vid fresh = g.max_id() + 1;
    while (cur.n() > 1) {
        auto verts = cur.vertices();
        std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
        std::size_t i = pick(rng), j = pick(rng);
        while (j == i)
            j = pick(rng);
        Vid w = fresh++;
        cur.contract(verts[i], verts[j], w);
        seq.steps.push_back({verts[i], verts[j], w});
    }
    return seq;
}

} // namespace tww::testing

#endif
