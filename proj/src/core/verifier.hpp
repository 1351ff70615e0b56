#pragma once

#include <string>
#include <vector>

#include "core/scaling.hpp"

namespace nsconic {

// One audited inequality: pass means applicable and slack = rhs - lhs within
// -1e-8 * (1 + |rhs|) of nonnegative. Inapplicable verdicts never count as
// failures.
struct LemmaVerdict {
    const char *id = "";
    double lhs = 0.0;
    double rhs = 0.0;
    bool applicable = true;
    bool pass = false;

    double slack() const { return rhs - lhs; }
    bool failed() const { return applicable && !pass; }
};

LemmaVerdict make_verdict(const char *id, double lhs, double rhs, bool applicable = true);

// Search directions of the homogeneous model.
struct Direction {
    Vec dy;
    Vec dx;
    double dtau = 0.0;
    Vec ds;
    double dkappa = 0.0;
};

// Everything one audited iteration produced: the incoming iterate z, the
// post-predictor iterate z_plus, and the post-corrector iterate z_pp, with
// barrier evaluations, path quantities, scalings, bounds, and directions.
struct StepContext {
    const ConicProblem *problem = nullptr;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double eta = 0.0;
    double nu = 0.0;
    double theta = 0.0;
    bool nominal_parameters = false; // alpha=1/(100 nu), beta=gamma=0.9, eta=1/(400 sqrt(nu))

    HsdPoint z, z_plus, z_pp;
    PathQuantities pq, pq_plus, pq_pp;
    BarrierEval be, be_plus, be_pp;
    SymMatrix hess_shadow;      // F''(x~)  = F*''(s)^{-1}
    SymMatrix hess_shadow_plus; // F''(x~_plus)
    const ScalingMatrix *w = nullptr;
    const ScalingMatrix *w_plus = nullptr;
    bool bounds_valid = false;      // d <= 0.18226
    bool bounds_plus_valid = false; // d_plus <= 0.18226
    SandwichBounds bounds, bounds_plus;
    Direction aff, cen, pred, cor;
    Vec resid_z, resid_plus, resid_pp;
};

double theta_bound(double nu, double beta, double gamma);

// Predictor-side checks: step norms, inner products, tau-kappa evolution,
// mu ratio, and the post-predictor shadow distance bound.
std::vector<LemmaVerdict> check_predictor(const StepContext &ctx);

// Corrector-side checks: residual/complementarity preservation, orthogonality,
// norm contraction, shadow product and post-corrector distance bounds.
std::vector<LemmaVerdict> check_corrector(const StepContext &ctx);

// Scaling checks at an iterate: mapping identities, dual-to-primal deviation
// bound, and the Loewner sandwich against the closed-form bounds.
// `shadow_hessian` is F''(x~); `plus` selects the id suffix for checks at the
// post-predictor iterate.
std::vector<LemmaVerdict> check_scaling(const HsdPoint &z, const BarrierEval &be,
                                        const PathQuantities &pq, const ScalingMatrix &w,
                                        const SandwichBounds &bounds, bool bounds_valid,
                                        const SymMatrix &shadow_hessian, bool plus);

// Sandwich of W_plus with bounds evaluated at the post-predictor distance;
// reports both the symmetric reading and the weaker mixed reading (the latter
// informational only).
std::vector<LemmaVerdict> check_scaling_plus(const StepContext &ctx);

// State-level checks at one iterate: mu mu~ >= 1 and the mu_e bracket
// mu/(2-beta) <= mu_e <= mu/beta (the latter when A2 and A4 hold).
std::vector<LemmaVerdict> check_state(const PathQuantities &pq, const NeighborhoodReport &report,
                                      double beta);

// Numeric thresholds specific to the nominal parameter set
// alpha = 1/(100 nu), beta = gamma = 0.9, eta = 1/(400 sqrt(nu)).
std::vector<LemmaVerdict> check_nominal_constants(const StepContext &ctx);

// One parsed row of the iteration trace CSV.
struct TraceRow {
    long iter = 0;
    double mu_e = 0.0;
    double res_norm = 0.0;
    double tau = 0.0;
    double kappa = 0.0;
    double delta_p_norm_x = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
    bool a1 = false, a2 = false, a3 = false, a4 = false, a5 = false;
    long verdict_failures = 0;
};

// Scalar-level audit of a serialized trace: assumption flags, zero recorded
// failures, the per-step geometric decay identities, and A2 recomputed from
// the columns. eta <= 0 skips the distance check.
std::vector<LemmaVerdict> verify_trace(const std::vector<TraceRow> &rows, double beta, double eta);

long count_failures(const std::vector<LemmaVerdict> &verdicts);

} // namespace nsconic
