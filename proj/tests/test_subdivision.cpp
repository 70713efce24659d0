#include "tww/subdivision.hpp"

#include "tww/solver.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace tww;
using namespace tww::testing;

TEST_CASE("subdividing K2 once gives P3") {
    Trigraph k2(2);
    k2.add_black(1, 2);
    auto inst = subdivide_uniform(k2, 1);
    CHECK(inst.subdivided.n() == 3);
    CHECK(inst.subdivided.black_edge_count() == 2);
    CHECK(inst.edges.size() == 1);
    CHECK(inst.edges[0].inner.size() == 1);
}

TEST_CASE("subdividing K4 three times gives 22 vertices") {
    auto inst = subdivide_uniform(complete_graph(4), 3);
    CHECK(inst.subdivided.n() == 4 + 6 * 3);
    CHECK(inst.edges.size() == 6);
    for (const auto& e : inst.edges) {
        CHECK(e.inner.size() == 3);
        for (Vid s : e.inner)
            CHECK(inst.subdivided.degree(s) == 2);
    }
}

TEST_CASE("subdivide rejects a zero length") {
    Trigraph k2(2);
    k2.add_black(1, 2);
    CHECK_THROWS_AS(subdivide(k2, {{{1, 2}, 0}}), TwwError);
    CHECK_THROWS_AS(subdivide(k2, {}), TwwError);
}

TEST_CASE("red edges subdivide into red paths") {
    Trigraph h(2);
    h.add_red(1, 2);
    auto inst = subdivide_uniform(h, 2);
    CHECK(inst.subdivided.red_edge_count() == 3);
    CHECK(inst.subdivided.black_edge_count() == 0);
}

TEST_CASE("supertrigraph shapes") {
    Trigraph k2(2);
    k2.add_black(1, 2);
    auto sup2 = build_supertrigraph(subdivide_uniform(k2, 1));
    CHECK(sup2.leaf_slots == 2);
    CHECK(sup2.graph.n() == 3 + 1); // P3 plus one internal root
    CHECK(sup2.graph.red_edge_count() == 0);

    Trigraph h16(16);
    h16.add_black(3, 11);
    auto sup16 = build_supertrigraph(subdivide_uniform(h16, 7));
    CHECK(sup16.leaf_slots == 16);
    CHECK(sup16.graph.n() == 16 + 7 + 15);
    CHECK(sup16.graph.red_edge_count() == 14); // tree edges except at the leaves

    Trigraph h5(5);
    auto sup5 = build_supertrigraph(subdivide_uniform(h5, 1));
    CHECK(sup5.leaf_slots == 8);
    // 7 internal nodes and 3 padding leaves
    CHECK(sup5.graph.n() == 5 + 7 + 3);
}

TEST_CASE("normalize_path contracts the middle down to the target") {
    Trigraph h16(16);
    h16.add_black(3, 11);
    int target = 2 * 4 - 1; // height 4

    auto exact = subdivide_uniform(h16, target);
    SubdivisionContractor c1(exact);
    CHECK(c1.normalize_path(0).empty());

    auto one_over = subdivide_uniform(h16, target + 1);
    SubdivisionContractor c2(one_over);
    CHECK(c2.normalize_path(0).size() == 1);

    auto doubled = subdivide_uniform(h16, 2 * target);
    SubdivisionContractor c3(doubled);
    CHECK(c3.normalize_path(0).size() == static_cast<std::size_t>(target));

    auto short_path = subdivide_uniform(h16, target - 1);
    SubdivisionContractor c4(short_path);
    CHECK_THROWS_AS(c4.normalize_path(0), TwwError);
}

TEST_CASE("zipping the (3,11) edge of the 16-leaf instance") {
    Trigraph h16(16);
    h16.add_black(3, 11);
    auto inst = subdivide_uniform(h16, 7);
    SubdivisionContractor c(inst);
    c.normalize_path(0);
    auto steps = c.zip_edge(0);
    CHECK(steps.size() == 7);

    // replay the first three contractions: the new vertex has red degree 4
    Trigraph probe = build_supertrigraph(inst).graph;
    for (int i = 0; i < 3; ++i)
        probe.contract(steps[static_cast<std::size_t>(i)].left, steps[static_cast<std::size_t>(i)].right,
                       steps[static_cast<std::size_t>(i)].result);
    CHECK(probe.red_degree(steps[2].result) == 4);
    CHECK(probe.max_red_degree() <= 4);
}

TEST_CASE("zipping K2 uses a single contraction with the root") {
    Trigraph k2(2);
    k2.add_black(1, 2);
    auto inst = subdivide_uniform(k2, 1);
    SubdivisionContractor c(inst);
    c.normalize_path(0);
    auto steps = c.zip_edge(0);
    CHECK(steps.size() == 1);
    CHECK(steps[0].left == c.super().slot_vertex[1]); // the root
}

TEST_CASE("zip keeps every leaf within one extra red edge") {
    std::mt19937 rng(97);
    Trigraph h = random_graph(12, 0.3, rng);
    auto inst = subdivide_uniform(h, 2 * 4 - 1);
    SubdivisionContractor c(inst);
    for (std::size_t i = 0; i < inst.edges.size(); ++i)
        c.normalize_path(i);

    std::map<Vid, int> base_red, increases;
    for (Vid v : inst.branch_vertices)
        base_red[v] = c.graph().red_degree(c.current(v));

    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        Trigraph replayed = c.graph();
        std::map<Vid, int> before;
        for (Vid v : inst.branch_vertices)
            before[v] = replayed.red_degree(c.current(v));
        auto steps = c.zip_edge(i);
        for (const auto& st : steps) {
            replayed.contract(st.left, st.right, st.result);
            for (Vid v : inst.branch_vertices) {
                Vid cur = c.current(v);
                if (replayed.has_vertex(cur))
                    CHECK(replayed.red_degree(cur) <= base_red[v] + 1);
            }
        }
        for (Vid v : inst.branch_vertices) {
            Vid cur = c.current(v);
            if (replayed.has_vertex(cur) && replayed.red_degree(cur) > before[v])
                ++increases[v];
        }
    }
    for (auto [v, cnt] : increases)
        CHECK(cnt <= 1);
}

TEST_CASE("after all zips the tree nodes induce the red full binary tree") {
    std::mt19937 rng(101);
    Trigraph h = random_graph(8, 0.4, rng);
    auto inst = subdivide_uniform(h, 2 * 3 - 1);
    SubdivisionContractor c(inst);
    for (std::size_t i = 0; i < inst.edges.size(); ++i)
        c.normalize_path(i);
    for (std::size_t i = 0; i < inst.edges.size(); ++i)
        c.zip_edge(i);

    const auto& sup = c.super();
    std::set<Vid> tree_now;
    for (int slot = 1; slot < sup.leaf_slots; ++slot)
        tree_now.insert(c.current(sup.slot_vertex[static_cast<std::size_t>(slot)]));
    REQUIRE(tree_now.size() == static_cast<std::size_t>(sup.leaf_slots - 1));
    Trigraph tree = c.graph().induced(tree_now);
    CHECK(tree.black_edge_count() == 0);
    CHECK(tree.red_edge_count() == static_cast<std::size_t>(sup.leaf_slots - 2));
    for (int slot = 2; slot < sup.leaf_slots; ++slot)
        CHECK(tree.has_red(c.current(sup.slot_vertex[static_cast<std::size_t>(slot)]),
                           c.current(sup.slot_vertex[static_cast<std::size_t>(slot / 2)])));
}

TEST_CASE("subdivision sequences of random graphs verify at width 4") {
    std::mt19937 rng(103);
    for (int it = 0; it < 8; ++it) {
        int n = 6 + static_cast<int>(rng() % 15);
        Trigraph h = random_graph(n, 0.35, rng);
        auto inst = subdivide_uniform(h, 2 * 5 - 1); // >= bound for n <= 32
        auto seq = subdivision_sequence(inst);
        CHECK_FALSE(seq.partial);
        auto rep = verify(seq, 4);
        CHECK(rep.accepted());
    }
}

TEST_CASE("all-red C4 base within the red-degree side conditions") {
    Trigraph c4(4);
    for (auto [u, v] : {std::pair{1, 2}, {2, 3}, {3, 4}, {4, 1}})
        c4.add_red(u, v);
    auto inst = subdivide_uniform(c4, 3); // 2*ceil(log 4)-1 = 3
    auto seq = subdivision_sequence(inst);
    CHECK(verify(seq, 4).accepted());
}

TEST_CASE("K2 subdivision folds well below the bound") {
    Trigraph k2(2);
    k2.add_black(1, 2);
    auto seq = subdivision_sequence(subdivide_uniform(k2, 1));
    CHECK(verify(seq, 2).accepted());
}

TEST_CASE("subdivision_sequence rejects bad inputs") {
    Trigraph h(8);
    h.add_black(1, 2);
    auto too_short = subdivide_uniform(h, 2); // bound is 5 for n = 8
    CHECK_THROWS_AS(subdivision_sequence(too_short), TwwError);

    // red degree 4 with a black neighbor violates the side condition
    Trigraph bad(6);
    for (Vid v : {2, 3, 4, 5})
        bad.add_red(1, v);
    bad.add_black(1, 6);
    SubdivisionInstance inst;
    inst.subdivided = bad;
    inst.branch_vertices = bad.vertices();
    CHECK_THROWS_AS(subdivision_sequence(inst), TwwError);
}

TEST_CASE("detect_subdivision recovers what subdivide built") {
    // K5 has no degree-2 vertices, so the registry comes back exactly
    auto inst = subdivide_uniform(complete_graph(5), 3);
    auto detected = detect_subdivision(inst.subdivided);
    CHECK(detected.branch_vertices == inst.branch_vertices);
    REQUIRE(detected.edges.size() == inst.edges.size());
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        CHECK(detected.edges[i].from == inst.edges[i].from);
        CHECK(detected.edges[i].to == inst.edges[i].to);
        CHECK(detected.edges[i].inner == inst.edges[i].inner);
    }

    CHECK_THROWS_AS(detect_subdivision(cycle_graph(6)), TwwError);
}
