#ifndef TWW_CNF_HPP
#define TWW_CNF_HPP

#include <optional>
#include <string>
#include <vector>

namespace tww {

// Clauses over signed 1-based variable indices, DIMACS style.
struct CnfInstance {
    int n_vars = 0;
    std::vector<std::vector<int>> clauses;

    void validate() const; // no empty clause, literals in range
};

bool satisfies(const CnfInstance& cnf, const std::vector<bool>& assignment);

// Exhaustive truth-table search; refuses more than 20 variables.
std::optional<std::vector<bool>> truth_table_sat(const CnfInstance& cnf);

} // namespace tww

#endif
