// Command-line front end; talks to the solver exclusively through the shared
// C API in nsconic/nsconic.h.
//
// Exit codes: 0 solved (optimal or infeasibility certificate), 1 input error,
// 2 unknown/iteration cap, 3 verification failure.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "nsconic/nsconic.h"

namespace {

int run_solve(const std::string &path, const std::string &mode, double epsilon, long max_iters,
              const std::string &trace_path, bool verify, const std::string &json_out) {
    nsc_problem *problem = nullptr;
    nsc_status st = nsc_problem_load(path.c_str(), &problem);
    if (st != NSC_OK) {
        std::fprintf(stderr, "error (%s): %s\n", nsc_status_name(st), nsc_last_error());
        return 1;
    }

    nsc_options opts;
    nsc_options_init(&opts);
    opts.mode = mode == "theoretical" ? NSC_MODE_THEORETICAL : NSC_MODE_ADAPTIVE;
    opts.epsilon = epsilon;
    opts.max_iterations = max_iters;
    opts.verify = verify ? 1 : 0;

    nsc_result *result = nullptr;
    st = nsc_solve(problem, &opts, &result);
    nsc_problem_free(problem);
    if (st != NSC_OK) {
        std::fprintf(stderr, "error (%s): %s\n", nsc_status_name(st), nsc_last_error());
        return 1;
    }

    if (!trace_path.empty()) {
        st = nsc_result_write_trace(result, trace_path.c_str());
        if (st != NSC_OK) {
            std::fprintf(stderr, "error (%s): %s\n", nsc_status_name(st), nsc_last_error());
            nsc_result_free(result);
            return 1;
        }
    }

    char *json = nullptr;
    st = nsc_result_to_json(result, &json);
    if (st != NSC_OK) {
        std::fprintf(stderr, "error (%s): %s\n", nsc_status_name(st), nsc_last_error());
        nsc_result_free(result);
        return 1;
    }
    if (!json_out.empty()) {
        std::FILE *f = std::fopen(json_out.c_str(), "wb");
        if (!f) {
            std::fprintf(stderr, "error: cannot write %s\n", json_out.c_str());
            nsc_string_free(json);
            nsc_result_free(result);
            return 1;
        }
        std::fputs(json, f);
        std::fclose(f);
    } else {
        std::puts(json);
    }
    nsc_string_free(json);

    const nsc_solve_status solve_st = nsc_result_status(result);
    const long failures = nsc_result_verdict_failures(result);
    const int converged = nsc_result_converged(result);
    std::fprintf(stderr, "status %s after %ld iterations (mu_e %.3e, residual %.3e)\n",
                 nsc_solve_status_name(solve_st), nsc_result_iterations(result),
                 nsc_result_mu_e(result), nsc_result_residual_norm(result));
    nsc_result_free(result);

    if (verify && failures > 0) {
        std::fprintf(stderr, "verification failed: %ld verdict failures\n", failures);
        return 3;
    }
    if (!converged || solve_st == NSC_SOLVE_UNKNOWN) return 2;
    return 0;
}

int run_verify(const std::string &path, double beta, double eta) {
    long failures = 0;
    nsc_status st = nsc_verify_trace(path.c_str(), beta, eta, &failures);
    if (st != NSC_OK) {
        std::fprintf(stderr, "error (%s): %s\n", nsc_status_name(st), nsc_last_error());
        return st == NSC_ERR_IO || st == NSC_ERR_PARSE ? 1 : 3;
    }
    if (failures > 0) {
        std::fprintf(stderr, "trace verification failed: %ld checks\n", failures);
        return 3;
    }
    std::puts("trace verified");
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"nsconic: nonsymmetric conic interior-point solver"};
    app.require_subcommand(1);

    std::string problem_path;
    std::string mode = "adaptive";
    double epsilon = 1e-8;
    long max_iters = 0;
    std::string trace_path;
    bool verify = false;
    std::string json_out;

    CLI::App *solve_cmd = app.add_subcommand("solve", "solve a problem file");
    solve_cmd->add_option("file", problem_path, "problem JSON file")->required();
    solve_cmd->add_option("--epsilon", epsilon, "termination scale factor in (0,1)");
    solve_cmd->add_option("--mode", mode, "theoretical|adaptive")
        ->check(CLI::IsMember({"theoretical", "adaptive"}));
    solve_cmd->add_option("--max-iters", max_iters, "iteration cap (0 = default)");
    solve_cmd->add_option("--trace", trace_path, "write the iteration trace CSV here");
    solve_cmd->add_flag("--verify", verify, "run the certification audit every iteration");
    solve_cmd->add_option("--json-out", json_out, "write the result JSON here");

    std::string trace_file;
    double beta = 0.9;
    double eta = 0.0;
    CLI::App *verify_cmd = app.add_subcommand("verify", "audit a saved trace CSV");
    verify_cmd->add_option("trace", trace_file, "trace CSV file")->required();
    verify_cmd->add_option("--beta", beta, "neighborhood parameter used by the run");
    verify_cmd->add_option("--eta", eta, "shadow-distance cap (0 skips the check)");

    CLI::App *selftest_cmd = app.add_subcommand("selftest", "run the built-in acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (solve_cmd->parsed())
        return run_solve(problem_path, mode, epsilon, max_iters, trace_path, verify, json_out);
    if (verify_cmd->parsed()) return run_verify(trace_file, beta, eta);
    if (selftest_cmd->parsed()) return nsc_selftest() == 0 ? 0 : 3;
    return 1;
}
