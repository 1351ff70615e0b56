#include "core/verifier.hpp"

#include <algorithm>
#include <cmath>

namespace nsconic {

namespace {
constexpr double kVerdictTol = 1e-8;

double sq(double v) { return v * v; }

// G applied to a direction; G is linear in all five components.
Vec apply_g(const ConicProblem &problem, const Direction &d) {
    HsdPoint z;
    z.y = d.dy;
    z.x = d.dx;
    z.tau = d.dtau;
    z.s = d.ds;
    z.kappa = d.dkappa;
    return residual(problem, z);
}

double omega1(double alpha, double beta, double gamma, double theta, double nu) {
    return 1.0 + alpha * alpha * theta / (2.0 * beta * nu) + alpha * (gamma / beta - 1.0);
}

double omega2(double alpha, double beta, double gamma, double theta, double nu) {
    return alpha * alpha * theta / (2.0 * beta * nu) +
           alpha * std::max(gamma / beta - 1.0, 1.0 - gamma / (2.0 - beta));
}

} // namespace

LemmaVerdict make_verdict(const char *id, double lhs, double rhs, bool applicable) {
    LemmaVerdict v;
    v.id = id;
    v.lhs = lhs;
    v.rhs = rhs;
    v.applicable = applicable;
    v.pass = applicable && (rhs - lhs >= -kVerdictTol * (1.0 + std::fabs(rhs)));
    return v;
}

double theta_bound(double nu, double beta, double gamma) {
    return nu * (1.0 - 2.0 * gamma + gamma * gamma / beta) + 1.0 - 0.5 * beta +
           gamma * gamma / (2.0 * beta) - gamma;
}

std::vector<LemmaVerdict> check_predictor(const StepContext &ctx) {
    std::vector<LemmaVerdict> out;
    const double alpha = ctx.alpha;
    const double beta = ctx.beta;
    const double gamma = ctx.gamma;
    const double theta = ctx.theta;
    const double nu = ctx.nu;
    const ScalingMatrix &w = *ctx.w;

    // Defining equations of the affine and centering systems.
    {
        const double scale = 1.0 + norm2(ctx.resid_z);
        Vec g_aff = apply_g(*ctx.problem, ctx.aff) + ctx.resid_z;
        double r1 = norm2(g_aff) / scale;
        double r2 = std::fabs(ctx.z.tau * ctx.aff.dkappa + ctx.z.kappa * ctx.aff.dtau +
                              ctx.z.tau * ctx.z.kappa) /
                    (1.0 + ctx.z.tau * ctx.z.kappa);
        Vec wrow = w.apply(ctx.aff.dx) + ctx.aff.ds + ctx.z.s;
        double r3 = norm2(wrow) / (1.0 + norm2(ctx.z.s));
        out.push_back(make_verdict("direction_affine", std::max({r1, r2, r3}), 0.0));

        Vec g_cen = apply_g(*ctx.problem, ctx.cen) - ctx.resid_z;
        r1 = norm2(g_cen) / scale;
        r2 = std::fabs(ctx.z.tau * ctx.cen.dkappa + ctx.z.kappa * ctx.cen.dtau - ctx.pq.mu_e) /
             (1.0 + ctx.pq.mu_e);
        wrow = w.apply(ctx.cen.dx) + ctx.cen.ds - scaled(ctx.pq.s_tilde, ctx.pq.mu_e);
        r3 = norm2(wrow) / (1.0 + ctx.pq.mu_e * norm2(ctx.pq.s_tilde));
        out.push_back(make_verdict("direction_centering", std::max({r1, r2, r3}), 0.0));
    }

    const double dxds = dot(ctx.pred.dx, ctx.pred.ds);
    const double dtdk = ctx.pred.dtau * ctx.pred.dkappa;

    // <dx,ds> + dtau dkappa = 0
    out.push_back(make_verdict("predictor_orthogonality",
                               std::fabs(dxds + dtdk) / (1.0 + std::fabs(dxds) + std::fabs(dtdk)),
                               0.0));

    // G(z + alpha dz) = (1 - alpha(1-gamma)) G(z)
    const double factor = 1.0 - alpha * (1.0 - gamma);
    {
        Vec dev = ctx.resid_plus - scaled(ctx.resid_z, factor);
        out.push_back(make_verdict("predictor_residual_factor",
                                   norm2(dev) / (1.0 + norm2(ctx.resid_z)), 0.0));
    }
    out.push_back(make_verdict("predictor_mu_e_factor",
                               std::fabs(ctx.pq_plus.mu_e - factor * ctx.pq.mu_e) /
                                   (1.0 + ctx.pq.mu_e),
                               0.0));

    // ||dx||_W^2 + (||ds||_W^*)^2 <= mu_e theta
    const double pred_norm = sq(w.norm_w(ctx.pred.dx)) + sq(w.norm_w_dual(ctx.pred.ds));
    out.push_back(make_verdict("predictor_norm_w", pred_norm, ctx.pq.mu_e * theta));

    // l_p ||dx||_x^2 + ||ds||_s^2 / u_d <= theta / beta
    {
        const bool app = ctx.bounds_valid;
        double lhs = 0.0;
        if (app) {
            const double nx = norm_induced(ctx.pred.dx, ctx.be.hessian);
            const double ns = norm_dual(ctx.pred.ds, ctx.hess_shadow);
            lhs = ctx.bounds.l_p * nx * nx + ns * ns / ctx.bounds.u_d;
        }
        out.push_back(make_verdict("predictor_norm_local", lhs, theta / beta, app));
    }

    // |<dx,ds>| <= mu_e theta / 2
    out.push_back(
        make_verdict("predictor_inner_product", std::fabs(dxds), 0.5 * ctx.pq.mu_e * theta));

    // dtau dkappa <= (gamma mu_e - tau kappa)^2 / (4 tau kappa)
    {
        const double tk = ctx.z.tau * ctx.z.kappa;
        const bool app = gamma >= 0.0 && tk > 0.0;
        out.push_back(make_verdict("predictor_tau_kappa_product", dtdk,
                                   app ? sq(gamma * ctx.pq.mu_e - tk) / (4.0 * tk) : 0.0, app));
    }

    // mu_plus/mu identity and its upper bound omega1
    {
        const double ratio = ctx.pq_plus.mu / ctx.pq.mu;
        const double predicted = 1.0 + alpha * alpha / (ctx.pq.mu * nu) * dxds +
                                 alpha * (gamma * ctx.pq.mu_e / ctx.pq.mu - 1.0);
        out.push_back(make_verdict("mu_ratio_identity", std::fabs(ratio - predicted), 0.0));
        out.push_back(
            make_verdict("mu_ratio_upper", ratio, omega1(alpha, beta, gamma, theta, nu)));
    }

    // tau_plus kappa_plus lower bound
    {
        const bool app = factor > 0.0;
        const double rhs_val = ctx.z_plus.tau * ctx.z_plus.kappa;
        const double lhs_val =
            app ? ctx.pq_plus.mu_e / factor *
                      (beta * (1.0 - alpha) + alpha * gamma - 0.5 * alpha * alpha * theta)
                : 0.0;
        out.push_back(make_verdict("tau_kappa_after_predictor", lhs_val, rhs_val, app));
    }

    // positivity of tau_plus, kappa_plus inside the admissible alpha range
    {
        const bool param_ok = beta < 1.0 || gamma < 1.0;
        bool app = param_ok && theta > 0.0;
        if (app) {
            const double limit =
                (gamma - beta + std::sqrt(sq(beta - gamma) + 2.0 * beta * theta)) / theta;
            app = alpha >= 0.0 && alpha < limit;
        }
        out.push_back(make_verdict("tau_kappa_positive_after_predictor", 0.0,
                                   std::min(ctx.z_plus.tau, ctx.z_plus.kappa), app));
    }

    // Post-predictor shadow distance bound.
    {
        bool app = ctx.bounds_valid;
        double rhs_val = 0.0;
        if (app) {
            const double lp = ctx.bounds.l_p;
            const double up = ctx.bounds.u_p;
            const double ld = ctx.bounds.l_d;
            const double ud = ctx.bounds.u_d;
            const double lim = std::min(std::min(lp, 1.0 / up), std::min(ld, 1.0 / ud));
            app = lp > 0.0 && alpha < std::sqrt(beta * lim / theta);
            const double den0 = 1.0 - alpha * std::sqrt(theta / (beta * lp));
            const double den1 = 1.0 - alpha * std::sqrt(ud * theta / beta);
            const double d = ctx.pq.delta_p_norm_x;
            app = app && den0 > 0.0 && den1 > 0.0 && d < 1.0;
            if (app) {
                const double w1 = omega1(alpha, beta, gamma, theta, nu);
                const double w2 = omega2(alpha, beta, gamma, theta, nu);
                rhs_val = ((1.0 - alpha) * d +
                           alpha * alpha * theta / (2.0 * beta * std::sqrt(nu) * (1.0 - d)) +
                           alpha * std::sqrt(theta) / std::sqrt(lp * beta) *
                               (w1 * (ud / den1 - 1.0) + w2)) /
                          den0;
            }
        }
        out.push_back(make_verdict("post_predictor_distance_bound", ctx.pq_plus.delta_p_norm_x,
                                   rhs_val, app));
    }

    return out;
}

std::vector<LemmaVerdict> check_corrector(const StepContext &ctx) {
    std::vector<LemmaVerdict> out;
    const ScalingMatrix &wp = *ctx.w_plus;
    const double nu = ctx.nu;
    const double mu_p = ctx.pq_plus.mu;

    // Defining equations of the corrector system.
    {
        Vec g_cor = apply_g(*ctx.problem, ctx.cor);
        const double r1 = norm2(g_cor) / (1.0 + norm2(ctx.resid_plus));
        const double r2 = std::fabs(ctx.z_plus.tau * ctx.cor.dkappa +
                                    ctx.z_plus.kappa * ctx.cor.dtau) /
                          (1.0 + ctx.z_plus.tau * ctx.z_plus.kappa);
        Vec wrow = wp.apply(ctx.cor.dx) + ctx.cor.ds + ctx.pq_plus.delta_d;
        const double r3 = norm2(wrow) / (1.0 + norm2(ctx.z_plus.s));
        out.push_back(make_verdict("direction_corrector", std::max({r1, r2, r3}), 0.0));
    }

    // (i) residuals unchanged
    {
        Vec dev = ctx.resid_pp - ctx.resid_plus;
        out.push_back(make_verdict("corrector_residual_unchanged",
                                   norm2(dev) / (1.0 + norm2(ctx.resid_plus)), 0.0));
    }
    // (ii) <x_plus, ds> + <dx, s_plus> = 0
    {
        const double v = dot(ctx.z_plus.x, ctx.cor.ds) + dot(ctx.cor.dx, ctx.z_plus.s);
        out.push_back(make_verdict("corrector_xs_orthogonality",
                                   std::fabs(v) / (1.0 + std::fabs(dot(ctx.z_plus.x, ctx.z_plus.s))),
                                   0.0));
    }
    const double dxds = dot(ctx.cor.dx, ctx.cor.ds);
    const double dtdk = ctx.cor.dtau * ctx.cor.dkappa;
    // (iii) <dx,ds> + dtau dkappa = 0
    out.push_back(make_verdict("corrector_orthogonality",
                               std::fabs(dxds + dtdk) / (1.0 + std::fabs(dxds) + std::fabs(dtdk)),
                               0.0));
    // (iv) mu_e unchanged
    out.push_back(make_verdict("corrector_mu_e_unchanged",
                               std::fabs(ctx.pq_pp.mu_e - ctx.pq_plus.mu_e) /
                                   (1.0 + ctx.pq_plus.mu_e),
                               0.0));

    const double dw = wp.norm_w(ctx.pq_plus.delta_p); // ||delta_p_plus||_{W_plus}
    // (v) norm contraction
    {
        const double lhs = sq(wp.norm_w(ctx.cor.dx)) + sq(wp.norm_w_dual(ctx.cor.ds));
        out.push_back(make_verdict("corrector_norm_bound", lhs, dw * dw));
    }
    // (vi) |<dx,ds>| <= ||delta_p_plus||_W^2 / 2
    out.push_back(make_verdict("corrector_inner_product", std::fabs(dxds), 0.5 * dw * dw));
    // (vii) tau kappa after the corrector
    out.push_back(make_verdict("corrector_tau_kappa",
                               ctx.z_plus.tau * ctx.z_plus.kappa - 0.5 * dw * dw,
                               ctx.z_pp.tau * ctx.z_pp.kappa));

    // Crude bound on ||x~_plus||_W / nu.
    const double crude = dw / (mu_p * nu) + 1.0 / std::sqrt(mu_p * nu);
    out.push_back(
        make_verdict("crude_shadow_norm_bound", wp.norm_w(ctx.pq_plus.x_tilde) / nu, crude));

    // Shadow product after the corrector, with the crude x~ bound substituted.
    {
        bool app = ctx.bounds_plus_valid;
        double rhs_val = 0.0;
        if (app) {
            const double ld = ctx.bounds_plus.l_d;
            const double ud = ctx.bounds_plus.u_d;
            const double lim = std::min(ld, 1.0 / ud);
            app = ld > 0.0 && dw / std::sqrt(mu_p) < std::sqrt(lim);
            const double c1 = 1.0 - dw / std::sqrt(ld * mu_p);
            const double c2 = 1.0 - std::sqrt(ud / mu_p) * dw;
            app = app && c1 > 0.0 && c2 > 0.0;
            if (app) {
                rhs_val = 1.0 +
                          dw * (crude * (1.0 / (ld * c1) - 1.0) +
                                ud / std::sqrt(mu_p * nu) * (1.0 / c2 - 1.0)) +
                          dw * dw * ud / (mu_p * nu * ld * c1 * c2);
            }
        }
        out.push_back(
            make_verdict("shadow_product_after_corrector", mu_p * ctx.pq_pp.mu_tilde, rhs_val, app));
    }

    // Post-corrector shadow distance bound.
    {
        bool app = ctx.bounds_plus_valid;
        double rhs_val = 0.0;
        if (app) {
            const double lp = ctx.bounds_plus.l_p;
            const double up = ctx.bounds_plus.u_p;
            const double ud = ctx.bounds_plus.u_d;
            const double lim = std::min(lp, 1.0 / up);
            app = lp > 0.0 && dw / std::sqrt(mu_p) < std::sqrt(lim);
            const double e1 = 1.0 - dw / std::sqrt(mu_p * lp);
            const double c2 = 1.0 - std::sqrt(ud / mu_p) * dw;
            app = app && e1 > 0.0 && c2 > 0.0;
            if (app) {
                const double a_term = dw / (e1 * std::sqrt(mu_p * lp)) * (ud / c2 - 1.0);
                app = a_term < 1.0;
                if (app)
                    rhs_val =
                        a_term + dw * dw / (2.0 * mu_p * std::sqrt(nu)) / (1.0 - a_term);
            }
        }
        out.push_back(make_verdict("post_corrector_distance_bound", ctx.pq_pp.delta_p_norm_x,
                                   rhs_val, app));
    }

    // The restored neighborhood condition on the shadow product.
    out.push_back(make_verdict("a4_after_corrector", ctx.beta * ctx.pq_pp.mu_e * ctx.pq_pp.mu_tilde,
                               1.0));

    return out;
}

namespace {
struct ScalingIds {
    const char *map_x, *map_xtilde, *delta_bound, *p_lower, *p_upper, *d_lower, *d_upper;
};
constexpr ScalingIds kScalingIdsBase = {
    "scaling_map_x",        "scaling_map_xtilde",   "delta_bound_dual",
    "sandwich_primal_lower", "sandwich_primal_upper", "sandwich_dual_lower",
    "sandwich_dual_upper"};
constexpr ScalingIds kScalingIdsPlus = {
    "scaling_map_x_plus",        "scaling_map_xtilde_plus",   "delta_bound_dual_plus",
    "sandwich_primal_lower_plus", "sandwich_primal_upper_plus", "sandwich_dual_lower_plus",
    "sandwich_dual_upper_plus"};
} // namespace

std::vector<LemmaVerdict> check_scaling(const HsdPoint &z, const BarrierEval &be,
                                        const PathQuantities &pq, const ScalingMatrix &w,
                                        const SandwichBounds &bounds, bool bounds_valid,
                                        const SymMatrix &shadow_hessian, bool plus) {
    std::vector<LemmaVerdict> out;
    const ScalingIds &ids = plus ? kScalingIdsPlus : kScalingIdsBase;

    // Mapping identities; only meaningful when no term was dropped.
    {
        Vec wx = w.apply(z.x);
        const double rel_x = norm2(wx - VecView(z.s)) / norm2(z.s);
        out.push_back(make_verdict(ids.map_x, rel_x, 1e-8, !w.degenerate_fallback));
        Vec wxt = w.apply(pq.x_tilde);
        const double rel_t = norm2(wxt - VecView(pq.s_tilde)) / norm2(pq.s_tilde);
        out.push_back(make_verdict(ids.map_xtilde, rel_t, 1e-8, !w.degenerate_fallback));
    }

    // || mu F''(x) delta_p - delta_d ||_x^* bound.
    {
        const double d = pq.delta_p_norm_x;
        const bool app = d < 1.0;
        double lhs = 0.0;
        double rhs = 0.0;
        if (app) {
            Vec v = scaled(be.hessian.apply(pq.delta_p), pq.mu) - VecView(pq.delta_d);
            lhs = norm_dual(v, be.hessian);
            rhs = pq.mu * d * d / std::pow(1.0 - d, 3);
        }
        out.push_back(make_verdict(ids.delta_bound, lhs, rhs, app));
    }

    // Loewner sandwich against the closed-form bounds.
    {
        SymMatrix primal = be.hessian;
        for (double &v : primal.p) v *= pq.mu;
        std::vector<double> eig =
            bounds_valid ? congruence_eigenvalues(w.w, cholesky(primal)) : std::vector<double>{0.0};
        out.push_back(make_verdict(ids.p_lower, bounds.l_p, eig.front(), bounds_valid));
        out.push_back(make_verdict(ids.p_upper, eig.back(), bounds.u_p, bounds_valid));

        SymMatrix dual = shadow_hessian; // F*''(s)^{-1} = F''(x~)
        for (double &v : dual.p) v /= pq.mu;
        eig = bounds_valid ? congruence_eigenvalues(w.w, cholesky(dual)) : std::vector<double>{0.0};
        out.push_back(make_verdict(ids.d_lower, bounds.l_d, eig.front(), bounds_valid));
        out.push_back(make_verdict(ids.d_upper, eig.back(), bounds.u_d, bounds_valid));
    }

    return out;
}

std::vector<LemmaVerdict> check_scaling_plus(const StepContext &ctx) {
    std::vector<LemmaVerdict> out =
        check_scaling(ctx.z_plus, ctx.be_plus, ctx.pq_plus, *ctx.w_plus, ctx.bounds_plus,
                      ctx.bounds_plus_valid, ctx.hess_shadow_plus, true);
    // Mixed-epsilon lower bound reading (eps from the pre-step iterate):
    // reported for reference, never audited.
    if (ctx.bounds_valid && ctx.bounds_plus_valid) {
        SymMatrix primal = ctx.be_plus.hessian;
        for (double &v : primal.p) v *= ctx.pq_plus.mu;
        std::vector<double> eig = congruence_eigenvalues(ctx.w_plus->w, cholesky(primal));
        const double mixed = 1.0 - ctx.bounds_plus.eps1 - ctx.bounds.eps2;
        out.push_back(make_verdict("sandwich_plus_lower_mixed", mixed, eig.front(), false));
    }
    return out;
}

std::vector<LemmaVerdict> check_state(const PathQuantities &pq, const NeighborhoodReport &report,
                                      double beta) {
    std::vector<LemmaVerdict> out;
    out.push_back(make_verdict("mu_product_geq_one", 1.0, pq.mu * pq.mu_tilde));
    out.push_back(make_verdict("mu_e_product_geq_one", 1.0, pq.mu_e * pq.mu_tilde_e));
    const bool app = report.a2 && report.a4;
    out.push_back(make_verdict("mu_e_lower", pq.mu / (2.0 - beta), pq.mu_e, app));
    out.push_back(make_verdict("mu_e_upper", pq.mu_e, pq.mu / beta, app));
    return out;
}

std::vector<LemmaVerdict> check_nominal_constants(const StepContext &ctx) {
    std::vector<LemmaVerdict> out;
    const bool nominal = ctx.nominal_parameters;
    const double nu = ctx.nu;
    const double sqrt_nu = std::sqrt(nu);
    const double alpha = ctx.alpha;
    const double beta = ctx.beta;
    const double gamma = ctx.gamma;
    const double theta = ctx.theta;

    out.push_back(make_verdict("nominal_theta_value",
                               std::fabs(theta - 0.1 * (nu + 1.0)), 0.0, nominal));

    const double d = ctx.pq.delta_p_norm_x;
    const bool in_eta = nominal && ctx.bounds_valid && d <= ctx.eta * (1.0 + 1e-12);
    out.push_back(make_verdict("nominal_lp_bound", 0.97966, ctx.bounds.l_p, in_eta));
    out.push_back(make_verdict("nominal_ud_bound", ctx.bounds.u_d, 1.02546, in_eta));

    const double dist_plus_cap = 0.00747 / sqrt_nu;
    out.push_back(make_verdict("nominal_post_predictor_distance", ctx.pq_plus.delta_p_norm_x,
                               dist_plus_cap, nominal));

    const bool plus_in_cap = nominal && ctx.bounds_plus_valid &&
                             ctx.pq_plus.delta_p_norm_x <= dist_plus_cap * (1.0 + 1e-12);
    out.push_back(make_verdict("nominal_lp_plus_bound", 0.93719, ctx.bounds_plus.l_p, plus_in_cap));
    out.push_back(make_verdict("nominal_ld_plus_bound", 0.92326, ctx.bounds_plus.l_d, plus_in_cap));
    out.push_back(make_verdict("nominal_up_plus_bound", ctx.bounds_plus.u_p, 1.06281, plus_in_cap));
    out.push_back(make_verdict("nominal_ud_plus_bound", ctx.bounds_plus.u_d, 1.07885, plus_in_cap));

    out.push_back(make_verdict("nominal_post_corrector_distance", ctx.pq_pp.delta_p_norm_x,
                               0.00074 / sqrt_nu, nominal));

    out.push_back(make_verdict("nominal_shadow_product_gap",
                               beta * (1.0 - alpha * (1.0 - gamma)) *
                                   (ctx.pq_plus.mu * ctx.pq_pp.mu_tilde - 1.0),
                               0.00077 / nu, nominal));
    out.push_back(make_verdict("nominal_shadow_param_margin", 0.00077 / nu,
                               alpha * gamma * (1.0 - beta) - alpha * alpha * theta / (2.0 * nu),
                               nominal));

    {
        const bool app = nominal && ctx.bounds_plus_valid;
        const double w1 = omega1(alpha, beta, gamma, theta, nu);
        const double dp = ctx.pq_plus.delta_p_norm_x;
        const double lhs = 0.5 * alpha * alpha * theta +
                           0.5 * ctx.bounds_plus.u_p * (2.0 - beta) * w1 * dp * dp;
        out.push_back(
            make_verdict("nominal_tau_kappa_margin", lhs, (1.0 - beta) * alpha * gamma, app));
    }

    out.push_back(make_verdict("nominal_predictor_step_x",
                               alpha * norm_induced(ctx.pred.dx, ctx.be.hessian), 0.00477,
                               nominal));
    out.push_back(make_verdict("nominal_predictor_step_s",
                               alpha * norm_dual(ctx.pred.ds, ctx.hess_shadow), 0.00478, nominal));
    out.push_back(make_verdict("nominal_corrector_step_x",
                               norm_induced(ctx.cor.dx, ctx.be_plus.hessian), 0.00796, nominal));
    out.push_back(make_verdict("nominal_corrector_step_s",
                               norm_dual(ctx.cor.ds, ctx.hess_shadow_plus), 0.00800, nominal));

    return out;
}

std::vector<LemmaVerdict> verify_trace(const std::vector<TraceRow> &rows, double beta,
                                       double eta) {
    std::vector<LemmaVerdict> out;
    long bad_index = 0;
    long flag_violations = 0;
    long recorded_failures = 0;
    double max_mu_dev = 0.0;
    double max_res_dev = 0.0;
    double max_a2_violation = 0.0;
    double max_a5_violation = 0.0;
    for (size_t k = 0; k < rows.size(); ++k) {
        const TraceRow &r = rows[k];
        if (r.iter != static_cast<long>(k)) ++bad_index;
        if (!(r.a1 && r.a2 && r.a3 && r.a4 && r.a5)) ++flag_violations;
        recorded_failures += r.verdict_failures;
        max_a2_violation =
            std::max(max_a2_violation, (beta * r.mu_e - r.tau * r.kappa) / (1.0 + beta * r.mu_e));
        if (eta > 0.0) max_a5_violation = std::max(max_a5_violation, r.delta_p_norm_x - eta);
        if (k + 1 < rows.size()) {
            const double factor = 1.0 - r.alpha * (1.0 - r.gamma);
            max_mu_dev = std::max(max_mu_dev, std::fabs(rows[k + 1].mu_e - factor * r.mu_e) /
                                                  std::max(r.mu_e, 1e-300));
            max_res_dev =
                std::max(max_res_dev, std::fabs(rows[k + 1].res_norm - factor * r.res_norm) /
                                          std::max(r.res_norm, 1e-300));
        }
    }
    out.push_back(make_verdict("trace_iter_index", static_cast<double>(bad_index), 0.0));
    out.push_back(make_verdict("trace_assumption_flags", static_cast<double>(flag_violations), 0.0));
    out.push_back(
        make_verdict("trace_recorded_failures", static_cast<double>(recorded_failures), 0.0));
    out.push_back(make_verdict("trace_mu_e_decay", max_mu_dev, 0.0));
    out.push_back(make_verdict("trace_residual_decay", max_res_dev, 0.0));
    out.push_back(make_verdict("trace_a2_recomputed", max_a2_violation, 0.0));
    out.push_back(make_verdict("trace_a5_recomputed", max_a5_violation, 0.0, eta > 0.0));
    return out;
}

long count_failures(const std::vector<LemmaVerdict> &verdicts) {
    long n = 0;
    for (const LemmaVerdict &v : verdicts)
        if (v.failed()) ++n;
    return n;
}

} // namespace nsconic
