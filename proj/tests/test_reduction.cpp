#include "tww/reduction.hpp"

#include "tww/io.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace tww;

namespace {

// (x1 v x2 v x3) and (-x1 v -x2 v -x3): the smallest compliant instance
CnfInstance minimal_instance() {
    CnfInstance cnf;
    cnf.n_vars = 3;
    cnf.clauses = {{1, 2, 3}, {-1, -2, -3}};
    return cnf;
}

// the 6-variable 8-clause example with every literal occurring twice
CnfInstance full_occupancy_instance() {
    CnfInstance cnf;
    cnf.n_vars = 6;
    cnf.clauses = {{-1, 3, 4}, {1, 2, -5},  {1, -3, 4},  {-2, -3, -6},
                   {-1, 3, 6}, {2, -4, 5},  {-2, -5, 6}, {-4, 5, -6}};
    return cnf;
}

std::map<int, int> degree_histogram(const Trigraph& g) {
    std::map<int, int> h;
    for (Vid v : g.vertices())
        ++h[g.degree(v)];
    return h;
}

} // namespace

TEST_CASE("compliant instances pass preprocessing unchanged") {
    auto pre = preprocess_occurrences(minimal_instance());
    CHECK(pre.outcome == PreprocessResult::Outcome::reduced);
    CHECK(pre.cnf.n_vars == 3);
    CHECK(pre.cnf.clauses == minimal_instance().clauses);
    CHECK(is_compliant(pre.cnf));
}

TEST_CASE("a variable with five occurrences is split into a cycle of copies") {
    CnfInstance cnf;
    cnf.n_vars = 4;
    cnf.clauses = {{1, 2, 3}, {1, -2, 4}, {1, 3, -4}, {-1, -3, 4}, {-1, 2, -4}, {-2, -3, -4}};
    // x1 occurs 3 times positively
    auto pre = preprocess_occurrences(cnf);
    REQUIRE(pre.outcome == PreprocessResult::Outcome::reduced);
    std::string why;
    CHECK_MESSAGE(is_compliant(pre.cnf, &why), why);
    CHECK(pre.cnf.n_vars > 4);
    // equisatisfiability by truth table
    CHECK(truth_table_sat(cnf).has_value() == truth_table_sat(pre.cnf).has_value());
}

TEST_CASE("splitting preserves unsatisfiability") {
    // x forced both ways through heavy occurrence counts
    CnfInstance cnf;
    cnf.n_vars = 3;
    cnf.clauses = {{1, 2}, {1, -2}, {1, 3}, {-1, 3}, {-1, -3}, {1, -3}, {-1, 2}, {-1, -2}};
    auto pre = preprocess_occurrences(cnf);
    bool orig_sat = truth_table_sat(cnf).has_value();
    bool pre_sat = pre.outcome == PreprocessResult::Outcome::trivially_sat ||
                   (pre.outcome == PreprocessResult::Outcome::reduced &&
                    truth_table_sat(pre.cnf).has_value());
    CHECK(orig_sat == pre_sat);
}

TEST_CASE("pure literals are assigned away") {
    CnfInstance cnf;
    cnf.n_vars = 3;
    cnf.clauses = {{1, 2, 3}, {1, -2, 3}}; // x1, x3 pure
    auto pre = preprocess_occurrences(cnf);
    CHECK(pre.outcome == PreprocessResult::Outcome::trivially_sat);
}

TEST_CASE("unit propagation detects trivial unsatisfiability") {
    CnfInstance cnf;
    cnf.n_vars = 1;
    cnf.clauses = {{1}, {-1}};
    CHECK(preprocess_occurrences(cnf).outcome == PreprocessResult::Outcome::trivially_unsat);
}

TEST_CASE("tautologies and duplicate literals are cleaned up") {
    CnfInstance cnf;
    cnf.n_vars = 3;
    cnf.clauses = {{1, -1, 2}, {2, 2, 3}, {-2, -3, 1}, {-1, 3, -2}};
    auto pre = preprocess_occurrences(cnf);
    if (pre.outcome == PreprocessResult::Outcome::reduced) {
        for (const auto& cl : pre.cnf.clauses) {
            std::set<int> s(cl.begin(), cl.end());
            CHECK(s.size() == cl.size());
        }
    }
    CHECK(truth_table_sat(cnf).has_value());
}

TEST_CASE("clauses wider than three are rejected") {
    CnfInstance cnf;
    cnf.n_vars = 4;
    cnf.clauses = {{1, 2, 3, 4}};
    CHECK_THROWS_AS(preprocess_occurrences(cnf), TwwError);
}

TEST_CASE("is_compliant rejects what the builder cannot take") {
    CnfInstance missing_polarity;
    missing_polarity.n_vars = 2;
    missing_polarity.clauses = {{1, 2}, {1, -2}};
    CHECK_FALSE(is_compliant(missing_polarity)); // x1 never negative

    CnfInstance three_pos;
    three_pos.n_vars = 2;
    three_pos.clauses = {{1, 2}, {1, -2}, {1, -2}, {-1, 2}};
    CHECK_FALSE(is_compliant(three_pos));
}

TEST_CASE("build_instance on the minimal compliant instance") {
    auto out = build_instance(minimal_instance());
    CHECK(out.chain_length == 2 * 5); // 5n+3m = 21, ceil(log2) = 5
    CHECK(out.clauses.size() == 2);
    CHECK(out.variables.size() == 3);
    // single-occurrence literals: one leaf per wire
    for (const auto& w : out.pos_wires)
        CHECK(w.occurrences == 1);

    // red graph: disjoint 12-vertex paths and singletons
    for (const auto& comp : out.graph.red_components())
        CHECK((comp.size() == 1 || comp.size() == 12));
    // every fence satisfies the attachment rule
    for (const auto& f : out.fences)
        CHECK(check_attachment_rule(out.graph, f).ok);
    // degree caps in the propagation digraph
    for (int v = 0; v < static_cast<int>(out.digraph.nodes.size()); ++v) {
        CHECK(out.digraph.out_degree(v) <= 2);
        CHECK(out.digraph.in_degree(v) <= 2);
        CHECK(out.digraph.out_degree(v) + out.digraph.in_degree(v) <= 3);
    }
    CHECK(out.stats.vertices == out.graph.n());
    CHECK(out.stats.fences > 0);
}

TEST_CASE("build_instance refuses non-compliant input") {
    CnfInstance bad;
    bad.n_vars = 2;
    bad.clauses = {{1, 2}};
    CHECK_THROWS_AS(build_instance(bad), TwwError);
}

TEST_CASE("the figure instance shape: 6 variables, 8 clauses") {
    auto cnf = full_occupancy_instance();
    REQUIRE(is_compliant(cnf));
    auto out = build_instance(cnf);
    // every literal occurs twice, so every wire branches into two leaves
    for (const auto& w : out.pos_wires)
        CHECK(w.occurrences == 2);
    for (const auto& w : out.neg_wires)
        CHECK(w.occurrences == 2);
    CHECK(out.vc.size() == 8);
    CHECK(out.aa.size() == 6);
    CHECK(out.fb_next.size() == 5);             // bb_i -> aa_{i+1} for i < n
    CHECK(out.chain_length == 2 * 6);           // 5n+3m = 54
    for (const auto& f : out.fences)
        CHECK(check_attachment_rule(out.graph, f).ok);
}

TEST_CASE("witness synthesis on the minimal instance verifies at width 4") {
    auto out = build_instance(minimal_instance());
    auto assignment = truth_table_sat(out.cnf);
    REQUIRE(assignment.has_value());
    std::size_t boundary = 0;
    auto seq = synthesize_witness(out, *assignment, &boundary);
    CHECK_FALSE(seq.partial);
    CHECK(boundary < seq.steps.size());
    auto rep = verify(seq, 4);
    CHECK_MESSAGE(rep.accepted(), rep.message, " step ", rep.violation_step, " width ", rep.width);
    CHECK(rep.width == 4);
}

TEST_CASE("every satisfying assignment of the minimal instance synthesizes") {
    auto out = build_instance(minimal_instance());
    int n = out.cnf.n_vars;
    int covered = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<bool> a(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            a[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        if (!satisfies(out.cnf, a))
            continue;
        auto seq = synthesize_witness(out, a);
        CHECK(verify(seq, 4).accepted());
        ++covered;
    }
    CHECK(covered == 6); // all assignments except all-true and all-false
}

TEST_CASE("preprocess keeps satisfiability over random wide instances") {
    std::mt19937 rng(127);
    for (int it = 0; it < 300; ++it) {
        int n = 2 + static_cast<int>(rng() % 5);
        int m = 1 + static_cast<int>(rng() % 10);
        CnfInstance cnf;
        cnf.n_vars = n;
        for (int j = 0; j < m; ++j) {
            int w = 1 + static_cast<int>(rng() % 3);
            std::vector<int> cl;
            for (int k = 0; k < w; ++k) {
                int v = 1 + static_cast<int>(rng() % n);
                cl.push_back(rng() % 2 ? v : -v);
            }
            cnf.clauses.push_back(cl);
        }
        bool orig = truth_table_sat(cnf).has_value();
        auto pre = preprocess_occurrences(cnf);
        if (pre.outcome == PreprocessResult::Outcome::trivially_sat) {
            CHECK(orig);
        } else if (pre.outcome == PreprocessResult::Outcome::trivially_unsat) {
            CHECK_FALSE(orig);
        } else if (pre.cnf.n_vars <= 20) {
            CHECK(orig == truth_table_sat(pre.cnf).has_value());
            CHECK(is_compliant(pre.cnf));
        }
    }
}

TEST_CASE("a falsifying assignment is refused at a clause gadget") {
    auto out = build_instance(minimal_instance());
    std::vector<bool> bad{true, true, true}; // falsifies the all-negative clause
    CHECK_THROWS_AS(synthesize_witness(out, bad), RefusalError);
    try {
        synthesize_witness(out, bad);
    } catch (const RefusalError& e) {
        CHECK(e.gadget_path.find("clause") == 0);
    }
}

TEST_CASE("two-literal clauses use the reduced gadget") {
    CnfInstance cnf;
    cnf.n_vars = 3;
    cnf.clauses = {{1, 2, 3}, {-1, -2}, {-3, 2}};
    REQUIRE(is_compliant(cnf));
    auto out = build_instance(cnf);
    CHECK(out.clauses[1].reduced);
    auto assignment = truth_table_sat(cnf);
    REQUIRE(assignment.has_value());
    auto seq = synthesize_witness(out, *assignment);
    auto rep = verify(seq, 4);
    CHECK_MESSAGE(rep.accepted(), rep.message, " step ", rep.violation_step);
}

TEST_CASE("residual red graph shape and histogram") {
    auto out = build_instance(minimal_instance());
    int n = out.cnf.n_vars, m = static_cast<int>(out.cnf.clauses.size());
    auto assignment = truth_table_sat(out.cnf);
    REQUIRE(assignment.has_value());
    std::size_t boundary = 0;
    auto seq = synthesize_witness(out, *assignment, &boundary);
    ContractionSequence prefix;
    prefix.base = seq.base;
    prefix.steps.assign(seq.steps.begin(), seq.steps.begin() + static_cast<std::ptrdiff_t>(boundary));
    prefix.partial = true;

    Trigraph residual = residual_red_graph(out, prefix);
    CHECK(residual.black_edge_count() == 0);
    CHECK(residual.max_red_degree() == 4);

    auto hist = degree_histogram(residual);
    int singles = 0;
    for (const auto& wires : {out.pos_wires, out.neg_wires})
        for (const auto& w : wires)
            if (w.occurrences == 1)
                ++singles;
    CHECK(hist[4] == n);
    // structural count: the last feedback set and the last clause junction
    // have degree 2, and single-occurrence branch sets pass through
    CHECK(hist[3] == 4 * n + 3 * m - 2 - singles);

    // rejecting a prefix short of the boundary
    ContractionSequence early = prefix;
    early.steps.resize(boundary / 2);
    CHECK_THROWS_AS(residual_red_graph(out, early), TwwError);
}

TEST_CASE("the propagation digraph is acyclic") {
    auto out = build_instance(full_occupancy_instance());
    int n = static_cast<int>(out.digraph.nodes.size());
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : out.digraph.arcs) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        ++indeg[static_cast<std::size_t>(b)];
    }
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0)
            queue.push_back(v);
    std::size_t seen = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++seen;
        for (int w : adj[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(w)] == 0)
                queue.push_back(w);
    }
    CHECK(seen == static_cast<std::size_t>(n));
}

TEST_CASE("vertex count scales as (n+m) log(n+m)") {
    // the ratio |V| / ((n+m) L) stays within a narrow constant band
    std::vector<CnfInstance> sizes = {minimal_instance(), full_occupancy_instance()};
    {
        CnfInstance mid;
        mid.n_vars = 4;
        mid.clauses = {{1, 2, 3}, {-1, -2, 4}, {2, -3, -4}, {-2, 3, 4}, {-1, -3, -4}};
        REQUIRE(is_compliant(mid));
        sizes.push_back(mid);
    }
    double lo = 1e9, hi = 0;
    for (const auto& cnf : sizes) {
        auto out = build_instance(cnf);
        double denom = static_cast<double>(cnf.n_vars + cnf.clauses.size()) * out.chain_length;
        double ratio = out.graph.n() / denom;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 2.5);
    CHECK(hi < 160.0);
}

TEST_CASE("manifest json round-trips through a rebuild") {
    auto out = build_instance(minimal_instance());
    std::string json = to_manifest_json(out);
    auto rebuilt = reduction_from_manifest(json);
    CHECK(rebuilt.graph == out.graph);
    CHECK(rebuilt.chain_length == out.chain_length);
    CHECK(rebuilt.cnf.clauses == out.cnf.clauses);

    // stale manifests are detected
    std::string tampered = json;
    auto pos = tampered.find("graph_digest");
    pos = tampered.find(':', pos);
    tampered[pos + 2] = tampered[pos + 2] == '1' ? '2' : '1';
    CHECK_THROWS_AS(reduction_from_manifest(tampered), FormatError);
}
