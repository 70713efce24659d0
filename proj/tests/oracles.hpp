#ifndef TWW_TESTS_ORACLES_HPP
#define TWW_TESTS_ORACLES_HPP

#include "tww/trigraph.hpp"

#include <algorithm>

// Test-only reference implementations, deliberately independent of the
// production solver: no memoization, no canonical forms, no ordering tricks.
namespace tww::testing {

namespace detail {

inline bool naive_decide_rec(const Trigraph& g, int d) {
    if (g.max_red_degree() > d)
        return false;
    if (g.n() <= 1)
        return true;
    auto verts = g.vertices();
    Vid fresh = g.max_id() + 1;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (naive_decide_rec(g.contracted(verts[i], verts[j], fresh), d))
                return true;
    return false;
}

inline int naive_width_rec(const Trigraph& g) {
    if (g.n() <= 1)
        return g.max_red_degree();
    auto verts = g.vertices();
    Vid fresh = g.max_id() + 1;
    int best = INT32_MAX;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            Trigraph h = g.contracted(verts[i], verts[j], fresh);
            best = std::min(best, std::max(h.max_red_degree(), naive_width_rec(h)));
        }
    }
    return std::max(best, g.max_red_degree());
}

} // namespace detail

// every contraction order, pruned only at the threshold
inline bool naive_decide_at_most(const Trigraph& g, int d) {
    return detail::naive_decide_rec(g, d);
}

// exact twin-width by full enumeration; only sensible for n <= 6
inline int naive_exact_width(const Trigraph& g) {
    if (g.n() == 0)
        return 0;
    return detail::naive_width_rec(g);
}

} // namespace tww::testing

#endif
