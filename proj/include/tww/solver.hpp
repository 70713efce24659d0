#ifndef TWW_SOLVER_HPP
#define TWW_SOLVER_HPP

#include "tww/sequence.hpp"

#include <cstdint>

namespace tww {

struct SolverBudget {
    std::uint64_t max_nodes = 5'000'000;
    double max_seconds = 120.0;
    int d_cap = 8;

    void validate() const;
};

enum class DecideStatus { yes, no, unknown };

struct DecideResult {
    DecideStatus status = DecideStatus::unknown;
    ContractionSequence witness; // set when status == yes
    std::uint64_t nodes = 0;
};

enum class SolveStatus { exact, upper_bound_only, budget_exhausted };

struct SolveResult {
    SolveStatus status = SolveStatus::budget_exhausted;
    int value = 0;
    ContractionSequence witness;
    std::uint64_t nodes = 0;
};

// Exhaustive search over contraction orders, memoized on the canonical
// partition (parts keyed by smallest original vertex). Any branch whose
// quotient trigraph exceeds red degree d is pruned, so a certified "no"
// means no d-sequence exists.
DecideResult decide_at_most(const Trigraph& g, int d, const SolverBudget& budget = {});

// Linear scan over d using decide_at_most. Falls back to the greedy witness
// when the budget or d_cap is exhausted.
SolveResult twin_width_exact(const Trigraph& g, const SolverBudget& budget = {});

// Tree schedule: contract two leaves sharing a parent whenever
// possible, otherwise a deepest leaf with its parent. Width <= 2 on black
// trees, <= max(2, max degree) on red trees.
ContractionSequence tree_sequence(const Trigraph& t);

// Baseline heuristic: repeatedly contract the pair minimizing the resulting
// max red degree, ties broken by smallest vertex ids.
SolveResult greedy_upper_bound(const Trigraph& g);

} // namespace tww

#endif
