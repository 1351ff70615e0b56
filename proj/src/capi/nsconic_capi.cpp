#include "nsconic/nsconic.h"

#include <cstring>
#include <iostream>
#include <new>
#include <string>

#include "core/io.hpp"
#include "core/selftest.hpp"

using namespace nsconic;

struct nsc_problem {
    ConicProblem problem;
};

struct nsc_result {
    SolveResult result;
};

namespace {

thread_local std::string t_last_error;

nsc_status map_error(const Error &e) {
    t_last_error = e.what();
    switch (e.code()) {
    case ErrorCode::IoError: return NSC_ERR_IO;
    case ErrorCode::ParseError:
    case ErrorCode::UnknownConeType: return NSC_ERR_PARSE;
    case ErrorCode::DimensionMismatch: return NSC_ERR_DIMENSION;
    case ErrorCode::InvalidArgument: return NSC_ERR_INVALID_ARGUMENT;
    default: return NSC_ERR_NUMERIC;
    }
}

template <typename Fn> nsc_status guarded(Fn &&fn) {
    try {
        fn();
        return NSC_OK;
    } catch (const Error &e) {
        return map_error(e);
    } catch (const std::bad_alloc &) {
        t_last_error = "out of memory";
        return NSC_ERR_NUMERIC;
    } catch (const std::exception &e) {
        t_last_error = e.what();
        return NSC_ERR_NUMERIC;
    }
}

nsc_status invalid(const char *msg) {
    t_last_error = msg;
    return NSC_ERR_INVALID_ARGUMENT;
}

nsc_status copy_vec(const Vec &src, double *dst, size_t len) {
    if (!dst) return invalid("null buffer");
    if (len < src.size()) return invalid("buffer too small");
    std::memcpy(dst, src.data(), src.size() * sizeof(double));
    return NSC_OK;
}

} // namespace

extern "C" {

void nsc_options_init(nsc_options *opts) {
    if (!opts) return;
    opts->mode = NSC_MODE_ADAPTIVE;
    opts->epsilon = 1e-8;
    opts->max_iterations = 0;
    opts->verify = 0;
    opts->beta = 0.0;
    opts->alpha_override = 0.0;
    opts->gamma_override = -1.0;
}

nsc_status nsc_problem_load(const char *path, nsc_problem **out) {
    if (!path || !out) return invalid("null argument");
    return guarded([&] { *out = new nsc_problem{parse_problem(path)}; });
}

nsc_status nsc_problem_from_json(const char *json_text, nsc_problem **out) {
    if (!json_text || !out) return invalid("null argument");
    return guarded([&] { *out = new nsc_problem{parse_problem_text(json_text)}; });
}

void nsc_problem_free(nsc_problem *p) { delete p; }

int nsc_problem_rows(const nsc_problem *p) { return p ? p->problem.rows() : 0; }
int nsc_problem_cols(const nsc_problem *p) { return p ? p->problem.cols() : 0; }
double nsc_problem_barrier_degree(const nsc_problem *p) {
    return p ? p->problem.cone.barrier_degree() : 0.0;
}

nsc_status nsc_solve(const nsc_problem *p, const nsc_options *opts, nsc_result **out) {
    if (!p || !out) return invalid("null argument");
    return guarded([&] {
        SolverConfig cfg;
        if (opts) {
            cfg.mode =
                opts->mode == NSC_MODE_THEORETICAL ? SolveMode::Theoretical : SolveMode::Adaptive;
            cfg.epsilon = opts->epsilon;
            cfg.max_iterations = opts->max_iterations;
            cfg.verify = opts->verify != 0;
            if (opts->beta > 0.0) cfg.beta = opts->beta;
            if (opts->alpha_override > 0.0) cfg.alpha_override = opts->alpha_override;
            if (opts->gamma_override >= 0.0) cfg.gamma_override = opts->gamma_override;
        }
        *out = new nsc_result{solve(p->problem, cfg)};
    });
}

void nsc_result_free(nsc_result *r) { delete r; }

nsc_solve_status nsc_result_status(const nsc_result *r) {
    if (!r) return NSC_SOLVE_UNKNOWN;
    switch (r->result.status) {
    case SolveStatus::Optimal: return NSC_SOLVE_OPTIMAL;
    case SolveStatus::PrimalInfeasible: return NSC_SOLVE_PRIMAL_INFEASIBLE;
    case SolveStatus::DualInfeasible: return NSC_SOLVE_DUAL_INFEASIBLE;
    case SolveStatus::Unknown: return NSC_SOLVE_UNKNOWN;
    }
    return NSC_SOLVE_UNKNOWN;
}

long nsc_result_iterations(const nsc_result *r) { return r ? r->result.iterations : 0; }
int nsc_result_converged(const nsc_result *r) { return r && r->result.converged ? 1 : 0; }
double nsc_result_objective(const nsc_result *r) { return r ? r->result.objective_primal : 0.0; }
double nsc_result_tau(const nsc_result *r) { return r ? r->result.tau : 0.0; }
double nsc_result_kappa(const nsc_result *r) { return r ? r->result.kappa : 0.0; }
double nsc_result_mu_e(const nsc_result *r) { return r ? r->result.mu_e_final : 0.0; }
double nsc_result_residual_norm(const nsc_result *r) {
    return r ? r->result.residual_norm_final : 0.0;
}
long nsc_result_verdict_failures(const nsc_result *r) {
    return r ? r->result.total_verdict_failures : 0;
}

nsc_status nsc_result_primal(const nsc_result *r, double *x, size_t len) {
    if (!r) return invalid("null result");
    return copy_vec(r->result.x, x, len);
}

nsc_status nsc_result_dual_y(const nsc_result *r, double *y, size_t len) {
    if (!r) return invalid("null result");
    return copy_vec(r->result.y, y, len);
}

nsc_status nsc_result_dual_s(const nsc_result *r, double *s, size_t len) {
    if (!r) return invalid("null result");
    return copy_vec(r->result.s, s, len);
}

nsc_status nsc_result_to_json(const nsc_result *r, char **out_text) {
    if (!r || !out_text) return invalid("null argument");
    return guarded([&] {
        std::string text = result_to_json(r->result);
        char *buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out_text = buf;
    });
}

nsc_status nsc_result_write_trace(const nsc_result *r, const char *path) {
    if (!r || !path) return invalid("null argument");
    return guarded([&] { write_trace(r->result.trace, path); });
}

void nsc_string_free(char *text) { delete[] text; }

nsc_status nsc_verify_trace(const char *path, double beta, double eta, long *failures_out) {
    if (!path || !failures_out) return invalid("null argument");
    return guarded([&] {
        std::vector<TraceRow> rows = read_trace(path);
        auto verdicts = verify_trace(rows, beta > 0.0 ? beta : 0.9, eta);
        *failures_out = count_failures(verdicts);
    });
}

long nsc_selftest(void) { return selftest::run_all_count_failures(std::cout); }

const char *nsc_last_error(void) { return t_last_error.c_str(); }

const char *nsc_status_name(nsc_status s) {
    switch (s) {
    case NSC_OK: return "ok";
    case NSC_ERR_IO: return "io_error";
    case NSC_ERR_PARSE: return "parse_error";
    case NSC_ERR_DIMENSION: return "dimension_mismatch";
    case NSC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case NSC_ERR_NUMERIC: return "numeric_error";
    case NSC_ERR_UNSUPPORTED: return "unsupported";
    }
    return "unknown";
}

const char *nsc_solve_status_name(nsc_solve_status s) {
    switch (s) {
    case NSC_SOLVE_OPTIMAL: return "optimal";
    case NSC_SOLVE_PRIMAL_INFEASIBLE: return "primal_infeasible";
    case NSC_SOLVE_DUAL_INFEASIBLE: return "dual_infeasible";
    case NSC_SOLVE_UNKNOWN: return "unknown";
    }
    return "unknown";
}

} // extern "C"
