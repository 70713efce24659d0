#include "tww/cnf.hpp"

#include "tww/trigraph.hpp"

#include <cmath>
#include <cstdlib>

namespace tww {

void CnfInstance::validate() const {
    if (n_vars < 0)
        throw TwwError("negative variable count");
    for (const auto& cl : clauses) {
        if (cl.empty())
            throw TwwError("empty clause");
        for (int lit : cl)
            if (lit == 0 || std::abs(lit) > n_vars)
                throw TwwError("literal out of range");
    }
}

bool satisfies(const CnfInstance& cnf, const std::vector<bool>& assignment) {
    if (assignment.size() != static_cast<std::size_t>(cnf.n_vars))
        throw TwwError("assignment size does not match variable count");
    for (const auto& cl : cnf.clauses) {
        bool sat = false;
        for (int lit : cl) {
            bool val = assignment[static_cast<std::size_t>(std::abs(lit)) - 1];
            if ((lit > 0) == val) {
                sat = true;
                break;
            }
        }
        if (!sat)
            return false;
    }
    return true;
}

std::optional<std::vector<bool>> truth_table_sat(const CnfInstance& cnf) {
    cnf.validate();
    if (cnf.n_vars > 20)
        throw TwwError("truth-table oracle limited to 20 variables");
    std::size_t limit = std::size_t{1} << cnf.n_vars;
    std::vector<bool> a(static_cast<std::size_t>(cnf.n_vars));
    for (std::size_t mask = 0; mask < limit; ++mask) {
        for (int i = 0; i < cnf.n_vars; ++i)
            a[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        if (satisfies(cnf, a))
            return a;
    }
    return std::nullopt;
}

} // namespace tww
