#pragma once

#include <string>

#include "core/solver.hpp"

namespace nsconic {

// Problem files are JSON documents with keys "m", "n", "A" (triplets
// [row, col, value], duplicates summed), "b", "c", and "cones" (ordered list
// of {"type": "nonneg"|"exp"|"pow", "dim"?, "alpha"?}).
ConicProblem parse_problem_text(const std::string &json_text);
ConicProblem parse_problem(const std::string &path);
std::string serialize_problem(const ConicProblem &problem);
void write_problem(const ConicProblem &problem, const std::string &path);

// Trace CSV: header
// iter,mu_e,res_norm,tau,kappa,delta_p_norm_x,alpha,gamma,a1,a2,a3,a4,a5,verdict_failures
// one row per iteration, numbers with 17 significant digits.
TraceRow to_trace_row(const IterationRecord &rec);
std::string serialize_trace(const std::vector<IterationRecord> &trace);
void write_trace(const std::vector<IterationRecord> &trace, const std::string &path);
std::vector<TraceRow> parse_trace_text(const std::string &csv_text);
std::vector<TraceRow> read_trace(const std::string &path);

std::string result_to_json(const SolveResult &result);

} // namespace nsconic
