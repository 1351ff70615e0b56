#include "core/selftest.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace nsconic::selftest {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

DenseMatrix from_rows(int m, int n, std::initializer_list<double> entries) {
    DenseMatrix a(m, n);
    int k = 0;
    for (double v : entries) a.a[k++] = v;
    return a;
}

} // namespace

ConicProblem standard_lp() {
    return make_problem(from_rows(1, 2, {1.0, 1.0}), {1.0}, {1.0, 2.0}, ConeSpec::orthant(2));
}

ConicProblem standard_exp() {
    return make_problem(from_rows(2, 3, {1, 0, 0, 0, 1, 0}), {1.0, 1.0}, {0.0, 0.0, -1.0},
                        ConeSpec::exponential());
}

ConicProblem standard_pow() {
    return make_problem(from_rows(2, 3, {1, 0, 0, 0, 1, 0}), {1.0, 1.0}, {0.0, 0.0, -1.0},
                        ConeSpec::power(0.6));
}

ConicProblem infeasible_lp() {
    return make_problem(from_rows(1, 1, {1.0}), {-1.0}, {1.0}, ConeSpec::orthant(1));
}

double lp_vertex_optimum(const ConicProblem &problem) {
    const int m = problem.rows();
    const int n = problem.cols();
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> basis(m);
    // Enumerate all column subsets of size m.
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    while (true) {
        DenseMatrix sub(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) sub.at(i, j) = problem.A.at(i, idx[j]);
        try {
            Vec xb = solve_general(sub, problem.b);
            bool feasible = true;
            for (double v : xb)
                if (v < -1e-9) feasible = false;
            if (feasible) {
                double obj = 0.0;
                for (int j = 0; j < m; ++j) obj += problem.c[idx[j]] * xb[j];
                best = std::min(best, obj);
            }
        } catch (const Error &) {
            // singular basis, skip
        }
        int k = m - 1;
        while (k >= 0 && idx[k] == n - m + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int i = k + 1; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
    return best;
}

namespace {

struct SharedRuns {
    SolveResult lp, exp, pow;
    double seconds = 0.0;
};

SharedRuns run_standard_problems() {
    SolverConfig cfg;
    cfg.mode = SolveMode::Theoretical;
    cfg.epsilon = 0.5;
    cfg.verify = true;
    SharedRuns runs;
    const auto start = Clock::now();
    runs.lp = solve(standard_lp(), cfg);
    runs.exp = solve(standard_exp(), cfg);
    runs.pow = solve(standard_pow(), cfg);
    runs.seconds = seconds_since(start);
    return runs;
}

long count_named_failures(const SolveResult &r, std::initializer_list<const char *> prefixes) {
    long bad = 0;
    for (const IterationRecord &rec : r.trace)
        for (const LemmaVerdict &v : rec.lemma_checks)
            for (const char *p : prefixes)
                if (std::strncmp(v.id, p, std::strlen(p)) == 0 && v.failed()) ++bad;
    return bad;
}

long count_applicable(const SolveResult &r, const char *prefix) {
    long n = 0;
    for (const IterationRecord &rec : r.trace)
        for (const LemmaVerdict &v : rec.lemma_checks)
            if (std::strncmp(v.id, prefix, std::strlen(prefix)) == 0 && v.applicable) ++n;
    return n;
}

CriterionResult criterion_geometric_decay() {
    CriterionResult c{1, "geometric decay identities over 200 iterations", false, ""};
    const auto start = Clock::now();
    SolverConfig cfg;
    cfg.mode = SolveMode::Theoretical;
    cfg.epsilon = 1e-3; // low enough that 200 iterations never terminate early
    cfg.max_iterations = 200;
    SolveResult r = solve(standard_lp(), cfg);
    const double elapsed = seconds_since(start);
    const double nu = r.nu;
    const double factor = 1.0 - 1.0 / (1000.0 * nu);
    if (r.trace.size() < 201) {
        c.detail = "trace too short";
        return c;
    }
    double max_mu_dev = 0.0;
    double max_res_dev = 0.0;
    const double res0 = r.trace[0].residual_norm;
    for (int k = 1; k <= 200; ++k) {
        const double expect = std::pow(factor, k);
        max_mu_dev = std::max(max_mu_dev, std::fabs(r.trace[k].mu_e - expect) / expect);
        max_res_dev = std::max(max_res_dev,
                               std::fabs(r.trace[k].residual_norm - expect * res0) /
                                   (expect * res0));
    }
    std::ostringstream d;
    d << "max rel dev mu_e " << max_mu_dev << ", residual " << max_res_dev << ", " << elapsed
      << " s";
    c.detail = d.str();
    c.pass = max_mu_dev <= 1e-8 && max_res_dev <= 1e-8 && elapsed < 5.0;
    return c;
}

CriterionResult criterion_assumption_maintenance(const SharedRuns &runs) {
    CriterionResult c{2, "neighborhood conditions hold at every iterate", false, ""};
    long total_iters = 0;
    long violations = 0;
    for (const SolveResult *r : {&runs.lp, &runs.exp, &runs.pow}) {
        total_iters += static_cast<long>(r->trace.size());
        for (const IterationRecord &rec : r->trace)
            if (!rec.assumptions.all()) ++violations;
    }
    std::ostringstream d;
    d << total_iters << " iterates, " << violations << " violations, " << runs.seconds << " s";
    c.detail = d.str();
    c.pass = violations == 0 && total_iters >= 500 && runs.seconds < 30.0;
    return c;
}

CriterionResult criterion_scaling_identities(const SharedRuns &runs) {
    CriterionResult c{3, "scaling maps x to s and x~ to s~; Cholesky succeeds", false, ""};
    long bad = 0;
    long checked = 0;
    for (const SolveResult *r : {&runs.lp, &runs.exp, &runs.pow}) {
        bad += count_named_failures(*r, {"scaling_map_x", "scaling_map_xtilde"});
        checked += count_applicable(*r, "scaling_map_x");
    }
    std::ostringstream d;
    d << checked << " mapping checks, " << bad << " failures";
    c.detail = d.str();
    c.pass = bad == 0 && checked > 0;
    return c;
}

CriterionResult criterion_sandwich(const SharedRuns &runs) {
    CriterionResult c{4, "scaling sandwich certified with closed-form bounds", false, ""};
    long bad = 0;
    long checked = 0;
    for (const SolveResult *r : {&runs.lp, &runs.exp, &runs.pow}) {
        bad += count_named_failures(*r, {"sandwich_primal", "sandwich_dual", "nominal_lp_bound",
                                         "nominal_ud_bound"});
        checked += count_applicable(*r, "sandwich_primal_lower");
        checked += count_applicable(*r, "nominal_lp_bound");
    }
    std::ostringstream d;
    d << checked << " sandwich checks, " << bad << " failures";
    c.detail = d.str();
    c.pass = bad == 0 && checked > 0;
    return c;
}

CriterionResult criterion_shadow_distance(const SharedRuns &runs) {
    CriterionResult c{5, "post-step shadow distances within nominal caps", false, ""};
    long bad = 0;
    long checked = 0;
    for (const SolveResult *r : {&runs.lp, &runs.exp, &runs.pow}) {
        bad += count_named_failures(
            *r, {"nominal_post_predictor_distance", "nominal_post_corrector_distance"});
        checked += count_applicable(*r, "nominal_post_predictor_distance");
    }
    std::ostringstream d;
    d << checked << " distance checks, " << bad << " failures";
    c.detail = d.str();
    c.pass = bad == 0 && checked > 0;
    return c;
}

CriterionResult criterion_full_audit(const SharedRuns &runs) {
    CriterionResult c{6, "lemma audit passes on all standard problems", false, ""};
    long failures = runs.lp.total_verdict_failures + runs.exp.total_verdict_failures +
                    runs.pow.total_verdict_failures;
    long applicable = 0;
    for (const SolveResult *r : {&runs.lp, &runs.exp, &runs.pow})
        for (const IterationRecord &rec : r->trace)
            for (const LemmaVerdict &v : rec.lemma_checks)
                if (v.applicable) ++applicable;
    std::ostringstream d;
    d << applicable << " applicable verdicts, " << failures << " failures";
    c.detail = d.str();
    c.pass = failures == 0 && applicable > 0;
    return c;
}

CriterionResult criterion_solutions() {
    CriterionResult c{7, "adaptive solves match independent oracles", false, ""};
    const auto start = Clock::now();
    SolverConfig cfg;
    cfg.mode = SolveMode::Adaptive;
    cfg.epsilon = 1e-8;

    std::ostringstream d;
    bool ok = true;

    ConicProblem lp = standard_lp();
    SolveResult r_lp = solve(lp, cfg);
    const double oracle = lp_vertex_optimum(lp);
    const bool lp_ok = r_lp.status == SolveStatus::Optimal &&
                       std::fabs(r_lp.objective_primal - oracle) <= 1e-6;
    ok = ok && lp_ok;
    d << "lp obj " << r_lp.objective_primal << " vs oracle " << oracle;

    SolveResult r_exp = solve(standard_exp(), cfg);
    const bool exp_ok =
        r_exp.status == SolveStatus::Optimal && std::fabs(r_exp.objective_primal) <= 1e-5;
    ok = ok && exp_ok;
    d << "; exp obj " << r_exp.objective_primal;

    ConicProblem bad = infeasible_lp();
    SolveResult r_bad = solve(bad, cfg);
    bool farkas_ok = r_bad.status == SolveStatus::PrimalInfeasible;
    if (farkas_ok) {
        const double by = dot(bad.b, r_bad.y);
        Vec aty = bad.A.apply_transpose(r_bad.y);
        double max_pos = 0.0;
        for (double v : aty) max_pos = std::max(max_pos, v);
        farkas_ok = by > 0.0 && max_pos <= 1e-6 * (1.0 + norm2(r_bad.y));
        d << "; farkas b'y " << by << " max(A'y) " << max_pos;
    } else {
        d << "; infeasible LP status " << solve_status_name(r_bad.status);
    }
    ok = ok && farkas_ok;

    const double elapsed = seconds_since(start);
    d << "; " << elapsed << " s";
    c.detail = d.str();
    c.pass = ok && elapsed < 10.0;
    return c;
}

CriterionResult criterion_iteration_complexity(const SharedRuns &runs) {
    CriterionResult c{8, "iteration counts within the complexity budget", false, ""};
    bool ok = true;
    std::ostringstream d;
    for (const SolveResult *r : {&runs.lp, &runs.exp, &runs.pow}) {
        const long budget = static_cast<long>(std::ceil(1000.0 * r->nu * std::log(2.0))) + 5;
        ok = ok && r->converged && r->iterations <= budget;
        d << r->iterations << "/" << budget << " ";
    }
    c.detail = d.str();
    c.pass = ok;
    return c;
}

CriterionResult criterion_numerical_kernels() {
    CriterionResult c{9, "barrier derivatives and operator-norm properties", false, ""};
    const auto start = Clock::now();
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    bool ok = true;
    std::ostringstream d;

    // Finite-difference validation of gradients and Hessians.
    const double h = 1e-5;
    double worst_grad = 0.0;
    double worst_hess = 0.0;
    auto sample_interior = [&](const ConeSpec &cone) {
        Vec x(cone.dim());
        const ConeBlock &blk = cone.blocks()[0];
        switch (blk.kind) {
        case ConeKind::NonnegOrthant:
            for (double &v : x) v = std::exp(1.5 * unit(rng));
            break;
        case ConeKind::Exponential: {
            x[1] = std::exp(unit(rng));
            x[2] = 2.0 * unit(rng);
            x[0] = x[1] * std::exp(x[2] / x[1]) + std::exp(unit(rng));
            break;
        }
        case ConeKind::Power: {
            x[0] = std::exp(unit(rng));
            x[1] = std::exp(unit(rng));
            x[2] = 0.9 * unit(rng) * std::pow(x[0], blk.exponent) *
                   std::pow(x[1], 1.0 - blk.exponent);
            break;
        }
        }
        return x;
    };
    std::vector<ConeSpec> cones = {ConeSpec::orthant(4), ConeSpec::exponential(),
                                   ConeSpec::power(0.6)};
    for (const ConeSpec &cone : cones) {
        for (int trial = 0; trial < 50; ++trial) {
            Vec x = sample_interior(cone);
            BarrierEval be = barrier_eval(cone, x);
            const int n = cone.dim();
            for (int i = 0; i < n; ++i) {
                Vec xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                const double g_fd =
                    (barrier_eval(cone, xp).value - barrier_eval(cone, xm).value) / (2.0 * h);
                worst_grad = std::max(worst_grad, std::fabs(g_fd - be.gradient[i]) /
                                                      (1.0 + std::fabs(be.gradient[i])));
                BarrierEval bp = barrier_eval(cone, xp);
                BarrierEval bm = barrier_eval(cone, xm);
                for (int j = 0; j < n; ++j) {
                    const double h_fd = (bp.gradient[j] - bm.gradient[j]) / (2.0 * h);
                    worst_hess = std::max(worst_hess, std::fabs(h_fd - be.hessian.at(j, i)) /
                                                          (1.0 + std::fabs(be.hessian.at(j, i))));
                }
            }
        }
    }
    ok = ok && worst_grad <= 1e-6 && worst_hess <= 1e-6;
    d << "fd grad " << worst_grad << " hess " << worst_hess;

    // operator_norm versus loewner_sandwich on random SPD pairs.
    auto random_spd = [&](int n) {
        DenseMatrix r(n, n);
        for (double &v : r.a) v = unit(rng);
        SymMatrix s(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k) acc += r.at(i, k) * r.at(j, k);
                s.at(i, j) = acc;
            }
        for (int i = 0; i < n; ++i) s.at(i, i) += 0.5;
        return s;
    };
    long equiv_bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SymMatrix p = random_spd(5);
        SymMatrix q = random_spd(5);
        SymMatrix diff(5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j <= i; ++j) diff.at(i, j) = p.at(i, j) - q.at(i, j);
        const double eps = operator_norm(diff, p);
        if (!loewner_sandwich(p, q, eps * (1.0 + 1e-9) + 1e-10)) ++equiv_bad;
        if (eps > 1e-8 && loewner_sandwich(p, q, eps * (1.0 - 1e-6))) ++equiv_bad;
        // Scaling law under P -> t P.
        for (double t : {0.5, 2.0, 10.0}) {
            SymMatrix tp = p;
            for (double &v : tp.p) v *= t;
            const double lhs = operator_norm(diff, tp);
            const double rhs = eps / t;
            if (std::fabs(lhs - rhs) > 1e-10 * (1.0 + rhs)) ++equiv_bad;
        }
    }
    ok = ok && equiv_bad == 0;
    d << "; equivalence failures " << equiv_bad;

    const double elapsed = seconds_since(start);
    d << "; " << elapsed << " s";
    c.detail = d.str();
    c.pass = ok && elapsed < 10.0;
    return c;
}

} // namespace

std::vector<CriterionResult> run_all(std::ostream &out) {
    std::vector<CriterionResult> results;
    results.push_back(criterion_geometric_decay());

    SharedRuns runs = run_standard_problems();
    results.push_back(criterion_assumption_maintenance(runs));
    results.push_back(criterion_scaling_identities(runs));
    results.push_back(criterion_sandwich(runs));
    results.push_back(criterion_shadow_distance(runs));
    results.push_back(criterion_full_audit(runs));
    results.push_back(criterion_solutions());
    results.push_back(criterion_iteration_complexity(runs));
    results.push_back(criterion_numerical_kernels());

    for (const CriterionResult &c : results)
        out << (c.pass ? "PASS" : "FAIL") << " criterion " << c.index << ": " << c.name << " ("
            << c.detail << ")\n";
    return results;
}

int run_all_count_failures(std::ostream &out) {
    int failures = 0;
    for (const CriterionResult &c : run_all(out))
        if (!c.pass) ++failures;
    return failures;
}

} // namespace nsconic::selftest
