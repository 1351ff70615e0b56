#include "core/solver.hpp"

#include <algorithm>
#include <cmath>

namespace nsconic {

namespace {

DenseMatrix assemble_kkt(const ConicProblem &problem, const HsdPoint &z, const ScalingMatrix &w) {
    const int m = problem.rows();
    const int n = problem.cols();
    DenseMatrix k(m + n + 1, m + n + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) k.at(i, m + j) = problem.A.at(i, j);
        k.at(i, m + n) = -problem.b[i];
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) k.at(m + i, j) = -problem.A.at(j, i);
        for (int j = 0; j < n; ++j) k.at(m + i, m + j) = w.w.at(i, j);
        k.at(m + i, m + n) = problem.c[i];
    }
    for (int j = 0; j < m; ++j) k.at(m + n, j) = problem.b[j];
    for (int j = 0; j < n; ++j) k.at(m + n, m + j) = -problem.c[j];
    k.at(m + n, m + n) = z.kappa / z.tau;
    return k;
}

} // namespace

KktSystem::KktSystem(const ConicProblem &problem, const HsdPoint &z, const ScalingMatrix &w)
    : problem_(problem), z_(z), w_(w), lu_(lu_factor(assemble_kkt(problem, z, w))) {
    if (z.tau <= 0.0 || z.kappa <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "tau and kappa must be positive");
}

Direction KktSystem::solve(const DirectionRhs &rhs, VecView g_of_z) const {
    const int m = problem_.rows();
    const int n = problem_.cols();
    Vec full(m + n + 1);
    for (int i = 0; i < m; ++i) full[i] = rhs.g_scale * g_of_z[i];
    for (int i = 0; i < n; ++i) full[m + i] = rhs.g_scale * g_of_z[m + i] + rhs.r[i];
    full[m + n] = rhs.g_scale * g_of_z[m + n] + rhs.t / z_.tau;
    Vec u = lu_.solve(full);

    Direction d;
    d.dy.assign(u.begin(), u.begin() + m);
    d.dx.assign(u.begin() + m, u.begin() + m + n);
    d.dtau = u[m + n];
    Vec wdx = w_.apply(d.dx);
    d.ds = VecView(rhs.r) - wdx;
    d.dkappa = (rhs.t - z_.kappa * d.dtau) / z_.tau;
    return d;
}

Direction solve_directions(const ConicProblem &problem, const HsdPoint &z, const ScalingMatrix &w,
                           const DirectionRhs &rhs) {
    KktSystem kkt(problem, z, w);
    return kkt.solve(rhs, residual(problem, z));
}

DirectionRhs affine_rhs(const HsdPoint &z) {
    DirectionRhs rhs;
    rhs.g_scale = -1.0;
    rhs.t = -z.tau * z.kappa;
    rhs.r = scaled(z.s, -1.0);
    return rhs;
}

DirectionRhs centering_rhs(const PathQuantities &pq) {
    DirectionRhs rhs;
    rhs.g_scale = 1.0;
    rhs.t = pq.mu_e;
    rhs.r = scaled(pq.s_tilde, pq.mu_e);
    return rhs;
}

DirectionRhs corrector_rhs(const PathQuantities &pq_plus) {
    DirectionRhs rhs;
    rhs.g_scale = 0.0;
    rhs.t = 0.0;
    rhs.r = scaled(pq_plus.delta_d, -1.0); // mu s~ - s
    return rhs;
}

namespace {

Direction combine(const Direction &aff, const Direction &cen, double gamma) {
    Direction d = aff;
    axpy(d.dy, gamma, cen.dy);
    axpy(d.dx, gamma, cen.dx);
    d.dtau += gamma * cen.dtau;
    axpy(d.ds, gamma, cen.ds);
    d.dkappa += gamma * cen.dkappa;
    return d;
}

HsdPoint advance(const HsdPoint &z, const Direction &d, double step) {
    HsdPoint out = z;
    axpy(out.y, step, d.dy);
    axpy(out.x, step, d.dx);
    out.tau += step * d.dtau;
    axpy(out.s, step, d.ds);
    out.kappa += step * d.dkappa;
    return out;
}

} // namespace

HsdPoint predictor_step(const ConicProblem &problem, const HsdPoint &z, const Direction &pred,
                        double alpha, PredictorDiagnostics *diag) {
    HsdPoint z_plus = advance(z, pred, alpha);
    if (membership_margin(problem.cone, z_plus.x) <= 0.0 ||
        dual_membership_margin(problem.cone, z_plus.s) <= 0.0)
        throw Error(ErrorCode::StepLeftCone, "predictor step left the cone interior");
    if (diag) {
        diag->orthogonality = dot(pred.dx, pred.ds) + pred.dtau * pred.dkappa;
        const double g0 = norm2(residual(problem, z));
        diag->residual_factor = g0 > 0.0 ? norm2(residual(problem, z_plus)) / g0 : 0.0;
        const double nu = problem.cone.barrier_degree();
        const double mu_e0 = (dot(z.x, z.s) + z.tau * z.kappa) / (nu + 1.0);
        const double mu_e1 = (dot(z_plus.x, z_plus.s) + z_plus.tau * z_plus.kappa) / (nu + 1.0);
        diag->mu_e_factor = mu_e1 / mu_e0;
    }
    return z_plus;
}

HsdPoint corrector_step(const HsdPoint &z_plus, const Direction &cor) {
    return advance(z_plus, cor, 1.0);
}

namespace {

// Full acceptance test for one adaptive trial step: the post-corrector point
// must satisfy all five neighborhood conditions.
bool trial_step_ok(const ConicProblem &problem, const HsdPoint &z, const Direction &pred,
                   double alpha, double beta, double eta) {
    HsdPoint z_plus = advance(z, pred, alpha);
    if (z_plus.tau <= 0.0 || z_plus.kappa <= 0.0) return false;
    if (membership_margin(problem.cone, z_plus.x) <= 0.0) return false;
    if (dual_membership_margin(problem.cone, z_plus.s) <= 0.0) return false;
    try {
        BarrierEval be_plus = barrier_eval(problem.cone, z_plus.x);
        PathQuantities pq_plus = path_quantities(problem, z_plus, be_plus);
        ScalingMatrix w_plus = build_scaling(z_plus.x, z_plus.s, pq_plus, be_plus);
        KktSystem kkt(problem, z_plus, w_plus);
        Direction cor = kkt.solve(corrector_rhs(pq_plus), residual(problem, z_plus));
        HsdPoint z_pp = corrector_step(z_plus, cor);
        if (z_pp.tau <= 0.0 || z_pp.kappa <= 0.0) return false;
        if (membership_margin(problem.cone, z_pp.x) <= 0.0) return false;
        if (dual_membership_margin(problem.cone, z_pp.s) <= 0.0) return false;
        BarrierEval be_pp = barrier_eval(problem.cone, z_pp.x);
        PathQuantities pq_pp = path_quantities(problem, z_pp, be_pp);
        return check_assumptions(problem, z_pp, pq_pp, beta, eta).all();
    } catch (const Error &) {
        return false;
    }
}

} // namespace

double adaptive_step_search(const ConicProblem &problem, const HsdPoint &z,
                            const BarrierEval &be, const PathQuantities &pq,
                            const ScalingMatrix &w, const Direction &aff, const Direction &cen,
                            const SolverConfig &config, double gamma) {
    (void)be;
    (void)pq;
    (void)w;
    const double nu = problem.cone.barrier_degree();
    const double alpha_theory = config.alpha_override.value_or(config.theoretical_alpha(nu));
    const double eta = config.eta(nu);
    Direction pred = combine(aff, cen, gamma);
    double alpha = 1.0;
    for (int k = 0; k < 90 && alpha > alpha_theory; ++k, alpha *= 0.9) {
        if (trial_step_ok(problem, z, pred, alpha, config.beta, eta)) return alpha;
    }
    return alpha_theory;
}

namespace {

bool uses_nominal_parameters(const SolverConfig &config, double alpha, double gamma, double nu) {
    const double alpha_nominal = 1.0 / (100.0 * nu);
    return std::fabs(alpha - alpha_nominal) <= 1e-14 * alpha_nominal &&
           std::fabs(gamma - 0.9) <= 1e-14 && std::fabs(config.beta - 0.9) <= 1e-14;
}

} // namespace

SolveResult solve(const ConicProblem &problem, const SolverConfig &config) {
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0))
        throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0,1)");
    if (!(config.beta > 0.0 && config.beta <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "beta must lie in (0,1]");

    const double nu = problem.cone.barrier_degree();
    const double eta = config.eta(nu);
    const double gamma = config.gamma_override.value_or(0.9);
    const long max_iter =
        config.max_iterations > 0
            ? config.max_iterations
            : static_cast<long>(std::ceil(2000.0 * nu * std::log(1.0 / config.epsilon))) + 100;

    SolveResult result;
    result.mode = config.mode;
    result.beta = config.beta;
    result.eta = eta;
    result.nu = nu;

    HsdPoint z = initial_hsd_point(problem);
    Vec g = residual(problem, z);
    result.residual_norm_initial = norm2(g);

    BarrierEval be = barrier_eval(problem.cone, z.x);
    PathQuantities pq = path_quantities(problem, z, be);

    for (long iter = 0;; ++iter) {
        g = residual(problem, z);
        const double g_norm = norm2(g);
        NeighborhoodReport report = check_assumptions(problem, z, pq, config.beta, eta);

        IterationRecord rec;
        rec.iter = iter;
        rec.mu_e = pq.mu_e;
        rec.residual_norm = g_norm;
        rec.delta_p_norm_x = pq.delta_p_norm_x;
        rec.tau = z.tau;
        rec.kappa = z.kappa;
        rec.assumptions = report;
        if (config.verify) {
            auto state = check_state(pq, report, config.beta);
            rec.lemma_checks.insert(rec.lemma_checks.end(), state.begin(), state.end());
        }

        const bool terminal = pq.mu_e <= config.epsilon &&
                              g_norm <= config.epsilon * result.residual_norm_initial;
        const bool dominance = config.mode == SolveMode::Adaptive && pq.mu_e <= config.epsilon &&
                               classify_solution(problem, z) != SolveStatus::Unknown;
        if (terminal || dominance || iter >= max_iter) {
            result.converged = terminal || dominance;
            result.hit_max_iterations = !result.converged;
            result.total_verdict_failures += rec.verdict_failures();
            result.trace.push_back(std::move(rec));
            result.iterations = iter;
            break;
        }

        // Scaling and the shared KKT factorization at z.
        ScalingMatrix w = build_scaling(z.x, z.s, pq, be);
        rec.scaling_fallback = w.degenerate_fallback;
        KktSystem kkt(problem, z, w);
        Direction aff = kkt.solve(affine_rhs(z), g);
        Direction cen = kkt.solve(centering_rhs(pq), g);

        double alpha;
        if (config.mode == SolveMode::Theoretical) {
            alpha = config.alpha_override.value_or(config.theoretical_alpha(nu));
        } else {
            alpha = adaptive_step_search(problem, z, be, pq, w, aff, cen, config, gamma);
        }
        Direction pred = combine(aff, cen, gamma);
        rec.alpha = alpha;
        rec.gamma = gamma;

        HsdPoint z_plus = predictor_step(problem, z, pred, alpha);
        if (z_plus.tau <= 0.0 || z_plus.kappa <= 0.0)
            throw Error(ErrorCode::StepLeftCone, "predictor step lost tau/kappa positivity");
        BarrierEval be_plus = barrier_eval(problem.cone, z_plus.x);
        PathQuantities pq_plus = path_quantities(problem, z_plus, be_plus);
        ScalingMatrix w_plus = build_scaling(z_plus.x, z_plus.s, pq_plus, be_plus);
        KktSystem kkt_plus(problem, z_plus, w_plus);
        Vec g_plus = residual(problem, z_plus);
        Direction cor = kkt_plus.solve(corrector_rhs(pq_plus), g_plus);

        HsdPoint z_pp = corrector_step(z_plus, cor);
        BarrierEval be_pp = barrier_eval(problem.cone, z_pp.x);
        PathQuantities pq_pp = path_quantities(problem, z_pp, be_pp);

        if (config.verify) {
            StepContext ctx;
            ctx.problem = &problem;
            ctx.alpha = alpha;
            ctx.beta = config.beta;
            ctx.gamma = gamma;
            ctx.eta = eta;
            ctx.nu = nu;
            ctx.theta = theta_bound(nu, config.beta, gamma);
            ctx.nominal_parameters = uses_nominal_parameters(config, alpha, gamma, nu);
            ctx.z = z;
            ctx.z_plus = z_plus;
            ctx.z_pp = z_pp;
            ctx.pq = pq;
            ctx.pq_plus = pq_plus;
            ctx.pq_pp = pq_pp;
            ctx.be = be;
            ctx.be_plus = be_plus;
            ctx.be_pp = be_pp;
            ctx.hess_shadow = barrier_eval(problem.cone, pq.x_tilde).hessian;
            ctx.hess_shadow_plus = barrier_eval(problem.cone, pq_plus.x_tilde).hessian;
            ctx.w = &w;
            ctx.w_plus = &w_plus;
            ctx.bounds_valid = pq.delta_p_norm_x <= 0.18226;
            if (ctx.bounds_valid) ctx.bounds = sandwich_bounds(pq.delta_p_norm_x, nu);
            ctx.bounds_plus_valid = pq_plus.delta_p_norm_x <= 0.18226;
            if (ctx.bounds_plus_valid)
                ctx.bounds_plus = sandwich_bounds(pq_plus.delta_p_norm_x, nu);
            ctx.aff = aff;
            ctx.cen = cen;
            ctx.pred = pred;
            ctx.cor = cor;
            ctx.resid_z = g;
            ctx.resid_plus = g_plus;
            ctx.resid_pp = residual(problem, z_pp);

            auto append = [&rec](std::vector<LemmaVerdict> &&v) {
                rec.lemma_checks.insert(rec.lemma_checks.end(),
                                        std::make_move_iterator(v.begin()),
                                        std::make_move_iterator(v.end()));
            };
            append(check_scaling(z, be, pq, w, ctx.bounds, ctx.bounds_valid, ctx.hess_shadow,
                                 false));
            append(check_predictor(ctx));
            append(check_scaling_plus(ctx));
            append(check_corrector(ctx));
            append(check_nominal_constants(ctx));
        }

        result.total_verdict_failures += rec.verdict_failures();
        result.trace.push_back(std::move(rec));

        z = std::move(z_pp);
        be = std::move(be_pp);
        pq = std::move(pq_pp);
    }

    result.final_point = z;
    result.tau = z.tau;
    result.kappa = z.kappa;
    result.mu_e_final = pq.mu_e;
    result.residual_norm_final = norm2(residual(problem, z));
    result.status = classify_solution(problem, z);
    if (result.hit_max_iterations) result.status = SolveStatus::Unknown;

    if (result.status == SolveStatus::Optimal) {
        result.x = scaled(z.x, 1.0 / z.tau);
        result.y = scaled(z.y, 1.0 / z.tau);
        result.s = scaled(z.s, 1.0 / z.tau);
        result.objective_primal = dot(problem.c, result.x);
        result.objective_dual = dot(problem.b, result.y);
        Vec pr = problem.A.apply(result.x) - VecView(problem.b);
        result.primal_feasibility = norm2(pr);
        Vec dr = problem.A.apply_transpose(result.y) + VecView(result.s) - VecView(problem.c);
        result.dual_feasibility = norm2(dr);
    } else {
        result.x = z.x;
        result.y = z.y;
        result.s = z.s;
        result.objective_primal = dot(problem.c, z.x);
        result.objective_dual = dot(problem.b, z.y);
    }
    return result;
}

} // namespace nsconic
