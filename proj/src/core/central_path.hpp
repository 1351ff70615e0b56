#pragma once

#include "core/cones.hpp"
#include "core/linalg.hpp"

namespace nsconic {

// The primal-dual instance: inf { <c,x> : A x = b, x in K }.
struct ConicProblem {
    DenseMatrix A; // m x n
    Vec b;         // m
    Vec c;         // n
    ConeSpec cone; // dimension n
    bool full_row_rank = true;

    int rows() const { return A.rows; }
    int cols() const { return A.cols; }
};

// Validates dimensions and checks (warn-only) that A has full row rank.
ConicProblem make_problem(DenseMatrix A, Vec b, Vec c, ConeSpec cone);

// Iterate of the homogeneous self-dual model.
struct HsdPoint {
    Vec y;
    Vec x;
    double tau = 1.0;
    Vec s;
    double kappa = 1.0;
};

HsdPoint initial_hsd_point(const ConicProblem &problem);

// G(y,x,tau,s,kappa) = [A x - b tau; -A'y + c tau - s; b'y - c'x - kappa],
// stacked as an (m+n+1)-vector.
Vec residual(const ConicProblem &problem, const HsdPoint &z);

// Complementarity and shadow quantities at an interior iterate.
struct PathQuantities {
    double mu = 0.0;         // <x,s>/nu
    double mu_tilde = 0.0;   // <x~,s~>/nu
    double mu_e = 0.0;       // (<x,s> + tau kappa)/(nu+1)
    double mu_tilde_e = 0.0; // (<x~,s~> + 1/(tau kappa))/(nu+1)
    Vec x_tilde;             // -F*'(s)
    Vec s_tilde;             // -F'(x)
    Vec delta_p;             // x - mu x~
    Vec delta_d;             // s - mu s~
    double delta_p_norm_x = 0.0;
};

PathQuantities path_quantities(const ConicProblem &problem, const HsdPoint &z,
                               const BarrierEval &be, VecView shadow_hint = {});

// The five neighborhood conditions with their measured slacks; the booleans
// are the exact sign tests of the slacks.
struct NeighborhoodReport {
    bool a1 = false, a2 = false, a3 = false, a4 = false, a5 = false;
    double margin_x = 0.0;      // A1 primal
    double margin_s = 0.0;      // A1 dual
    double slack_a2 = 0.0;      // tau kappa - beta mu_e
    double min_tau_kappa = 0.0; // A3
    double slack_a4 = 0.0;      // 1 - beta mu_e mu~
    double slack_a5 = 0.0;      // eta - ||delta_p||_x

    bool all() const { return a1 && a2 && a3 && a4 && a5; }
};

NeighborhoodReport check_assumptions(const ConicProblem &problem, const HsdPoint &z,
                                     const PathQuantities &pq, double beta, double eta);
// Convenience overload recomputing the path quantities.
NeighborhoodReport check_assumptions(const ConicProblem &problem, const HsdPoint &z, double beta,
                                     double eta);

enum class SolveStatus { Optimal, PrimalInfeasible, DualInfeasible, Unknown };

const char *solve_status_name(SolveStatus s);

// tau/kappa dominance test with ratio threshold 1e3 and absolute guard 1e-14.
SolveStatus classify_solution(const ConicProblem &problem, const HsdPoint &z);

} // namespace nsconic
