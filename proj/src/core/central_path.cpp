#include "core/central_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nsconic {

namespace {

// Row rank by Gaussian elimination with partial pivoting on a copy.
int row_rank(DenseMatrix m) {
    const double tol = std::max(m.rows, m.cols) * std::numeric_limits<double>::epsilon() *
                       std::max(m.max_abs(), 1e-300);
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = rank;
        double best = std::fabs(m.at(rank, col));
        for (int i = rank + 1; i < m.rows; ++i) {
            const double v = std::fabs(m.at(i, col));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= tol) continue;
        if (piv != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(rank, j), m.at(piv, j));
        for (int i = rank + 1; i < m.rows; ++i) {
            const double f = m.at(i, col) / m.at(rank, col);
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

} // namespace

ConicProblem make_problem(DenseMatrix A, Vec b, Vec c, ConeSpec cone) {
    if (A.rows < 1 || A.cols < 1)
        throw Error(ErrorCode::DimensionMismatch, "constraint matrix must be nonempty");
    if (static_cast<int>(b.size()) != A.rows)
        throw Error(ErrorCode::DimensionMismatch, "b length does not match row count");
    if (static_cast<int>(c.size()) != A.cols)
        throw Error(ErrorCode::DimensionMismatch, "c length does not match column count");
    if (cone.dim() != A.cols)
        throw Error(ErrorCode::DimensionMismatch, "cone dimension does not match column count");
    ConicProblem p{std::move(A), std::move(b), std::move(c), std::move(cone), true};
    p.full_row_rank = row_rank(p.A) == p.rows();
    return p;
}

HsdPoint initial_hsd_point(const ConicProblem &problem) {
    HsdPoint z;
    z.x = initial_point(problem.cone);
    z.s = z.x;
    z.y.assign(problem.rows(), 0.0);
    z.tau = 1.0;
    z.kappa = 1.0;
    return z;
}

Vec residual(const ConicProblem &problem, const HsdPoint &z) {
    const int m = problem.rows();
    const int n = problem.cols();
    if (static_cast<int>(z.x.size()) != n || static_cast<int>(z.s.size()) != n ||
        static_cast<int>(z.y.size()) != m)
        throw Error(ErrorCode::DimensionMismatch, "iterate dimensions do not match problem");
    Vec g(m + n + 1);
    Vec ax = problem.A.apply(z.x);
    for (int i = 0; i < m; ++i) g[i] = ax[i] - problem.b[i] * z.tau;
    Vec aty = problem.A.apply_transpose(z.y);
    for (int j = 0; j < n; ++j) g[m + j] = -aty[j] + problem.c[j] * z.tau - z.s[j];
    g[m + n] = dot(problem.b, z.y) - dot(problem.c, z.x) - z.kappa;
    return g;
}

PathQuantities path_quantities(const ConicProblem &problem, const HsdPoint &z,
                               const BarrierEval &be, VecView shadow_hint) {
    if (z.tau * z.kappa <= 0.0)
        throw Error(ErrorCode::NotInterior, "tau kappa must be positive");
    const double nu = be.nu;
    PathQuantities pq;
    pq.mu = dot(z.x, z.s) / nu;
    pq.s_tilde = scaled(be.gradient, -1.0);
    Vec hint;
    if (shadow_hint.empty() && pq.mu > 0.0) {
        hint = scaled(z.x, 1.0 / pq.mu);
        shadow_hint = hint;
    }
    pq.x_tilde = conjugate_shadow(problem.cone, z.s, shadow_hint);
    pq.mu_tilde = dot(pq.x_tilde, pq.s_tilde) / nu;
    pq.mu_e = (dot(z.x, z.s) + z.tau * z.kappa) / (nu + 1.0);
    pq.mu_tilde_e = (dot(pq.x_tilde, pq.s_tilde) + 1.0 / (z.tau * z.kappa)) / (nu + 1.0);
    pq.delta_p = z.x - scaled(pq.x_tilde, pq.mu);
    pq.delta_d = z.s - scaled(pq.s_tilde, pq.mu);
    pq.delta_p_norm_x = norm_induced(pq.delta_p, be.hessian);
    return pq;
}

NeighborhoodReport check_assumptions(const ConicProblem &problem, const HsdPoint &z,
                                     const PathQuantities &pq, double beta, double eta) {
    NeighborhoodReport r;
    r.margin_x = membership_margin(problem.cone, z.x);
    r.margin_s = dual_membership_margin(problem.cone, z.s);
    r.a1 = r.margin_x > 0.0 && r.margin_s > 0.0;
    r.slack_a2 = z.tau * z.kappa - beta * pq.mu_e;
    r.a2 = r.slack_a2 >= 0.0;
    r.min_tau_kappa = std::min(z.tau, z.kappa);
    r.a3 = r.min_tau_kappa > 0.0;
    r.slack_a4 = 1.0 - beta * pq.mu_e * pq.mu_tilde;
    r.a4 = r.slack_a4 >= 0.0;
    r.slack_a5 = eta - pq.delta_p_norm_x;
    r.a5 = r.slack_a5 >= 0.0;
    return r;
}

NeighborhoodReport check_assumptions(const ConicProblem &problem, const HsdPoint &z, double beta,
                                     double eta) {
    BarrierEval be = barrier_eval(problem.cone, z.x);
    PathQuantities pq = path_quantities(problem, z, be);
    return check_assumptions(problem, z, pq, beta, eta);
}

const char *solve_status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::PrimalInfeasible: return "primal_infeasible";
    case SolveStatus::DualInfeasible: return "dual_infeasible";
    case SolveStatus::Unknown: return "unknown";
    }
    return "unknown";
}

SolveStatus classify_solution(const ConicProblem &problem, const HsdPoint &z) {
    constexpr double kRatio = 1e3;
    constexpr double kGuard = 1e-14;
    if (z.tau > std::max(z.kappa, kGuard) * kRatio) return SolveStatus::Optimal;
    if (z.kappa > std::max(z.tau, kGuard) * kRatio) {
        if (dot(problem.b, z.y) > 0.0) return SolveStatus::PrimalInfeasible;
        if (dot(problem.c, z.x) < 0.0) return SolveStatus::DualInfeasible;
    }
    return SolveStatus::Unknown;
}

} // namespace nsconic
