#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "core/solver.hpp"

namespace nsconic::selftest {

// The three standard feasible instances plus one infeasible instance used by
// the built-in acceptance checks.
ConicProblem standard_lp();         // min x1 + 2 x2 : x1 + x2 = 1, x >= 0
ConicProblem standard_exp();        // min -x3 : x1 = 1, x2 = 1, x in K_exp
ConicProblem standard_pow();        // min -x3 : x1 = 1, x2 = 1, x in K_pow(0.6)
ConicProblem infeasible_lp();       // x1 = -1, x1 >= 0

// Brute-force oracle: minimum objective over all basic feasible solutions of
// an orthant-cone LP.
double lp_vertex_optimum(const ConicProblem &problem);

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs every acceptance criterion, printing one PASS/FAIL line per criterion.
std::vector<CriterionResult> run_all(std::ostream &out);

// Convenience wrapper returning the number of failed criteria.
int run_all_count_failures(std::ostream &out);

} // namespace nsconic::selftest
