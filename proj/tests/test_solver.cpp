#include "tww/solver.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace tww;
using namespace tww::testing;

namespace {

// random cograph on vertices 1..n via a random cotree
Trigraph random_cograph(int n, std::mt19937& rng) {
    Trigraph g(n);
    std::vector<std::vector<Vid>> groups;
    for (Vid v = 1; v <= n; ++v)
        groups.push_back({v});
    while (groups.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, groups.size() - 1);
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j)
            continue;
        if (rng() % 2) // join step: all edges between the two groups
            for (Vid u : groups[i])
                for (Vid v : groups[j])
                    g.add_black(u, v);
        groups[i].insert(groups[i].end(), groups[j].begin(), groups[j].end());
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
    }
    return g;
}

} // namespace

TEST_CASE("complete graphs decide at width 0") {
    auto r = decide_at_most(complete_graph(5), 0);
    REQUIRE(r.status == DecideStatus::yes);
    auto rep = verify(r.witness, 0);
    CHECK(rep.accepted());
}

TEST_CASE("P4 is the canonical non-cograph") {
    CHECK(decide_at_most(path_graph(4), 0).status == DecideStatus::no);
    CHECK(decide_at_most(path_graph(4), 1).status == DecideStatus::yes);
    auto r = twin_width_exact(path_graph(4));
    CHECK(r.status == SolveStatus::exact);
    CHECK(r.value == 1);
}

TEST_CASE("C7 exact value agrees with the naive enumerator") {
    Trigraph c7 = cycle_graph(7);
    auto r = twin_width_exact(c7);
    REQUIRE(r.status == SolveStatus::exact);
    CHECK(r.value == naive_exact_width(c7));
    CHECK(verify(r.witness, r.value).accepted());
    CHECK(decide_at_most(c7, r.value - 1).status == DecideStatus::no);
}

TEST_CASE("random cographs have twin-width 0") {
    std::mt19937 rng(61);
    for (int it = 0; it < 10; ++it) {
        auto r = twin_width_exact(random_cograph(10, rng));
        CHECK(r.status == SolveStatus::exact);
        CHECK(r.value == 0);
    }
}

TEST_CASE("random trees solve to at most 2") {
    std::mt19937 rng(67);
    for (int it = 0; it < 5; ++it) {
        auto r = twin_width_exact(random_tree(9, rng));
        CHECK(r.status == SolveStatus::exact);
        CHECK(r.value <= 2);
    }
}

TEST_CASE("3x3 grid exact value, cross-checked") {
    Trigraph g(9); // vertices r*3+c+1
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            int v = r * 3 + c + 1;
            if (c + 1 < 3)
                g.add_black(v, v + 1);
            if (r + 1 < 3)
                g.add_black(v, v + 3);
        }
    }
    auto res = twin_width_exact(g);
    REQUIRE(res.status == SolveStatus::exact);
    CHECK(verify(res.witness, res.value).accepted());
    CHECK(naive_decide_at_most(g, res.value));
    CHECK_FALSE(naive_decide_at_most(g, res.value - 1));
}

TEST_CASE("solver agrees with the naive enumerator on small random graphs") {
    std::mt19937 rng(71);
    for (int it = 0; it < 25; ++it) {
        int n = 4 + static_cast<int>(rng() % 3);
        Trigraph g = random_graph(n, 0.5, rng);
        int exact = twin_width_exact(g).value;
        CHECK(exact == naive_exact_width(g));
    }
}

TEST_CASE("reddening never decreases the exact twin-width") {
    std::mt19937 rng(73);
    for (int it = 0; it < 20; ++it) {
        Trigraph g = random_graph(5, 0.5, rng);
        Trigraph h = g;
        for (int u = 1; u <= 5; ++u) {
            for (int v = u + 1; v <= 5; ++v) {
                if (rng() % 4 == 0) {
                    h.remove_edge(u, v);
                    h.add_red(u, v);
                }
            }
        }
        CHECK(twin_width_exact(h).value >= twin_width_exact(g).value);
    }
}

TEST_CASE("induced subtrigraphs never increase the exact twin-width") {
    std::mt19937 rng(79);
    for (int it = 0; it < 20; ++it) {
        Trigraph g = random_graph(6, 0.5, rng);
        std::set<Vid> s;
        for (Vid v : g.vertices())
            if (rng() % 2)
                s.insert(v);
        if (s.empty())
            s.insert(1);
        CHECK(twin_width_exact(g.induced(s)).value <= twin_width_exact(g).value);
    }
}

TEST_CASE("budget exhaustion reports unknown") {
    SolverBudget tiny;
    tiny.max_nodes = 2;
    Trigraph g = cycle_graph(8);
    auto r = decide_at_most(g, 2, tiny);
    CHECK(r.status == DecideStatus::unknown);
    auto s = twin_width_exact(g, tiny);
    CHECK(s.status == SolveStatus::budget_exhausted);
    CHECK(verify(s.witness, s.value).accepted()); // greedy fallback still verifies
}

TEST_CASE("tree sequence on a black star") {
    Trigraph star(6);
    for (int v = 2; v <= 6; ++v)
        star.add_black(1, v);
    auto seq = tree_sequence(star);
    CHECK_FALSE(seq.partial);
    CHECK(width(seq) <= 2);
}

TEST_CASE("tree sequence on the red 12-path stays within 2") {
    Trigraph p(12);
    for (int v = 1; v < 12; ++v)
        p.add_red(v, v + 1);
    auto seq = tree_sequence(p);
    CHECK(width(seq) <= 2);
}

TEST_CASE("tree sequence on a single edge") {
    Trigraph e(2);
    e.add_black(1, 2);
    auto seq = tree_sequence(e);
    CHECK(seq.steps.size() == 1);
    CHECK(width(seq) <= 1);
}

TEST_CASE("tree sequence rejects non-trees") {
    CHECK_THROWS_AS(tree_sequence(cycle_graph(4)), TwwError);
    Trigraph disconnected(4);
    disconnected.add_black(1, 2);
    CHECK_THROWS_AS(tree_sequence(disconnected), TwwError);
    CHECK_THROWS_AS(tree_sequence(Trigraph(0)), TwwError);
}

TEST_CASE("tree sequence handles black trees and bounded red trees") {
    std::mt19937 rng(83);
    for (int it = 0; it < 30; ++it) {
        auto seq = tree_sequence(random_tree(20, rng, false));
        CHECK(width(seq) <= 2);
    }
    for (int d : {3, 4}) {
        for (int it = 0; it < 15; ++it) {
            auto seq = tree_sequence(random_bounded_tree(20, d, rng, true));
            CHECK(width(seq) <= d);
        }
    }
}

TEST_CASE("greedy upper bound verifies on cographs and the example graph") {
    std::mt19937 rng(89);
    auto cg = random_cograph(9, rng);
    auto r = greedy_upper_bound(cg);
    CHECK(r.value == 0);
    CHECK(verify(r.witness, 0).accepted());

    auto fig = greedy_upper_bound(example_seven());
    CHECK(fig.value >= 2);
    CHECK(verify(fig.witness, fig.value).accepted());

    auto tree = greedy_upper_bound(random_tree(12, rng));
    CHECK(verify(tree.witness, tree.value).accepted());
}
