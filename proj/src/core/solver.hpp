#pragma once

#include <cmath>
#include <optional>

#include "core/verifier.hpp"

namespace nsconic {

enum class SolveMode { Theoretical, Adaptive };

struct SolverConfig {
    SolveMode mode = SolveMode::Theoretical;
    double epsilon = 1e-8;   // target scale factor in (0,1)
    long max_iterations = 0; // <= 0: ceil(2000 nu ln(1/eps)) + 100
    std::optional<double> alpha_override;
    std::optional<double> gamma_override;
    double beta = 0.9;
    bool verify = false; // run the lemma audit every iteration

    double eta(double nu) const { return 1.0 / (400.0 * std::sqrt(nu)); }
    double theoretical_alpha(double nu) const { return 1.0 / (100.0 * nu); }
};

// Right-hand side of one direction system: G(dz) = g_scale * G(z),
// tau dkappa + kappa dtau = t, W dx + ds = r.
struct DirectionRhs {
    double g_scale = 0.0;
    double t = 0.0;
    Vec r;
};

// KKT elimination: ds = r - W dx, dkappa = (t - kappa dtau)/tau, leaving one
// unsymmetric (m+n+1) system in (dy, dx, dtau) whose LU is shared between the
// affine and centering solves of an iteration.
class KktSystem {
  public:
    KktSystem(const ConicProblem &problem, const HsdPoint &z, const ScalingMatrix &w);
    Direction solve(const DirectionRhs &rhs, VecView g_of_z) const;

  private:
    const ConicProblem &problem_;
    const HsdPoint &z_;
    const ScalingMatrix &w_;
    LuFactor lu_;
};

// Spec'd single-shot entry point (factors on every call).
Direction solve_directions(const ConicProblem &problem, const HsdPoint &z, const ScalingMatrix &w,
                           const DirectionRhs &rhs);

DirectionRhs affine_rhs(const HsdPoint &z);
DirectionRhs centering_rhs(const PathQuantities &pq);
DirectionRhs corrector_rhs(const PathQuantities &pq_plus);

struct PredictorDiagnostics {
    double orthogonality = 0.0;   // <dx,ds> + dtau dkappa
    double residual_factor = 0.0; // ||G(z+)|| / ||G(z)||
    double mu_e_factor = 0.0;     // mu_e(z+) / mu_e(z)
};

// z_plus = z + alpha (aff + gamma cen); throws StepLeftCone if the step exits
// the cone interior.
HsdPoint predictor_step(const ConicProblem &problem, const HsdPoint &z, const Direction &pred,
                        double alpha, PredictorDiagnostics *diag = nullptr);

HsdPoint corrector_step(const HsdPoint &z_plus, const Direction &cor);

struct IterationRecord {
    long iter = 0;
    double mu_e = 0.0;
    double residual_norm = 0.0;
    double delta_p_norm_x = 0.0;
    double tau = 0.0;
    double kappa = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
    NeighborhoodReport assumptions;
    std::vector<LemmaVerdict> lemma_checks;
    bool scaling_fallback = false;

    long verdict_failures() const { return count_failures(lemma_checks); }
};

struct SolveResult {
    SolveStatus status = SolveStatus::Unknown;
    bool converged = false;
    bool hit_max_iterations = false;
    long iterations = 0;
    SolveMode mode = SolveMode::Theoretical;
    double beta = 0.9;
    double eta = 0.0;
    double nu = 0.0;

    HsdPoint final_point;
    Vec x, y, s; // solution (divided by tau when Optimal) or certificate
    double tau = 0.0;
    double kappa = 0.0;
    double objective_primal = 0.0; // <c, x/tau> when Optimal
    double objective_dual = 0.0;   // <b, y/tau> when Optimal
    double primal_feasibility = 0.0;
    double dual_feasibility = 0.0;
    double mu_e_final = 0.0;
    double residual_norm_initial = 0.0;
    double residual_norm_final = 0.0;
    long total_verdict_failures = 0;
    std::vector<IterationRecord> trace;
};

SolveResult solve(const ConicProblem &problem, const SolverConfig &config);

// Largest alpha in {0.9^k} (k >= 0) whose post-corrector trial keeps the five
// neighborhood conditions; falls back to the theoretical step size.
double adaptive_step_search(const ConicProblem &problem, const HsdPoint &z,
                            const BarrierEval &be, const PathQuantities &pq,
                            const ScalingMatrix &w, const Direction &aff, const Direction &cen,
                            const SolverConfig &config, double gamma);

} // namespace nsconic
