#include "core/scaling.hpp"

#include <cmath>

namespace nsconic {

ScalingMatrix build_scaling(VecView x, VecView s, const PathQuantities &pq,
                            const BarrierEval &be) {
    const double nu = be.nu;
    const double mu = pq.mu;
    if (mu <= 0.0) throw Error(ErrorCode::InvalidArgument, "mu must be positive");

    ScalingMatrix out;
    out.w = be.hessian;
    for (double &v : out.w.p) v *= mu;
    out.w.add_outer(s, 1.0 / (nu * mu));
    out.w.add_outer(pq.s_tilde, -mu / nu);

    const double den1 = dot(pq.delta_p, pq.delta_d);
    if (std::fabs(den1) >= 1e-24 * mu * mu) {
        out.w.add_outer(pq.delta_d, 1.0 / den1);
    } else {
        out.degenerate_fallback = true;
    }

    Vec hx_tilde = be.hessian.apply(pq.x_tilde);
    Vec u = hx_tilde - scaled(pq.s_tilde, pq.mu_tilde);
    const double den2 = dot(pq.x_tilde, hx_tilde) - nu * pq.mu_tilde * pq.mu_tilde;
    if (den2 >= 1e-24) {
        out.w.add_outer(u, -mu / den2);
    } else {
        out.degenerate_fallback = true;
    }

    out.factor = cholesky(out.w);
    return out;
}

SandwichBounds sandwich_bounds(double d, double nu) {
    if (d < 0.0) throw Error(ErrorCode::InvalidArgument, "negative distance");
    if (d > 0.18226)
        throw Error(ErrorCode::OutOfAnalysisRegion,
                    "||delta_p||_x exceeds 0.18226; sandwich bounds undefined");
    SandwichBounds sb;
    sb.delta_p_norm_x = d;
    const double omd3 = std::pow(1.0 - d, 3);
    const double q = d + d * d / omd3;
    sb.eps1 = (q / nu) * (q + 2.0 * std::sqrt(nu));
    // The d -> 0 limit is taken by factoring one d out of the squared term.
    const double w = 3.0 * d / omd3;
    sb.eps2 = 2.0 / (omd3 - d) *
              (4.0 * d * d / omd3 + 2.0 * d + d * (1.0 + w) * (1.0 + w) / (1.0 - w));
    sb.l_p = 1.0 - sb.eps1 - sb.eps2;
    sb.u_p = 1.0 + sb.eps1 + sb.eps2;
    sb.l_d = sb.l_p * (1.0 - d) * (1.0 - d);
    sb.u_d = sb.u_p / ((1.0 - d) * (1.0 - d));
    return sb;
}

bool verify_sandwich(const ScalingMatrix &w, const BarrierEval &be,
                     const SymMatrix &dual_hessian_inverse, double mu, const SandwichBounds &sb) {
    constexpr double kSlack = 1e-9;
    SymMatrix primal = be.hessian;
    for (double &v : primal.p) v *= mu;
    std::vector<double> eig = congruence_eigenvalues(w.w, cholesky(primal));
    if (eig.front() < sb.l_p - kSlack || eig.back() > sb.u_p + kSlack) return false;

    SymMatrix dual = dual_hessian_inverse;
    for (double &v : dual.p) v /= mu;
    eig = congruence_eigenvalues(w.w, cholesky(dual));
    return eig.front() >= sb.l_d - kSlack && eig.back() <= sb.u_d + kSlack;
}

} // namespace nsconic
