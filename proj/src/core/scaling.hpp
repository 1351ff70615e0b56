#pragma once

#include "core/central_path.hpp"

namespace nsconic {

// Positive-definite scaling W with W x = s and W x~ = s~.
struct ScalingMatrix {
    SymMatrix w;
    CholeskyFactor factor;
    bool degenerate_fallback = false;

    Vec apply(VecView v) const { return w.apply(v); }
    Vec solve(VecView v) const { return factor.solve(v); }
    double norm_w(VecView v) const { return norm_induced(v, w); }
    double norm_w_dual(VecView v) const { return norm_dual(v, factor); }
};

// W = mu F''(x) + s s'/(nu mu) - mu s~ s~'/nu
//     + dD dD'/<dP,dD> - mu [F''(x) x~ - mu~ s~][...]'/(||x~||_x^2 - nu mu~^2).
// Rank-one terms with vanishing denominators are dropped (they vanish on the
// central path); the fallback flag records this.
ScalingMatrix build_scaling(VecView x, VecView s, const PathQuantities &pq,
                            const BarrierEval &be);

// Closed-form Loewner sandwich bounds as a function of d = ||delta_p||_x.
struct SandwichBounds {
    double eps1 = 0.0;
    double eps2 = 0.0;
    double l_p = 1.0;
    double u_p = 1.0;
    double l_d = 1.0;
    double u_d = 1.0;
    double delta_p_norm_x = 0.0;
};

// Valid for d <= 0.18226 (all internal denominators stay positive).
SandwichBounds sandwich_bounds(double delta_p_norm_x, double nu);

// True iff l_p mu F''(x) <= W <= u_p mu F''(x) and
// (l_d/mu) F*''(s)^{-1} <= W <= (u_d/mu) F*''(s)^{-1}, with eigenvalue slack
// 1e-9. `dual_hessian_inverse` is F*''(s)^{-1} = F''(x~).
bool verify_sandwich(const ScalingMatrix &w, const BarrierEval &be,
                     const SymMatrix &dual_hessian_inverse, double mu, const SandwichBounds &sb);

} // namespace nsconic
