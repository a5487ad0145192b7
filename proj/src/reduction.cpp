#include "hmmreduce/reduction.hpp"

#include <cmath>

#include "hmmreduce/algebra.hpp"
#include "hmmreduce/projection.hpp"

namespace hmmreduce {

namespace {

/// Clamps floating-point noise in (-1e-12, 0) to zero and renormalizes
/// columns. Larger negativity indicates a pipeline bug and is an error.
Eigen::MatrixXd clamp_stochastic(Eigen::MatrixXd M, const std::string& name) {
    for (int j = 0; j < M.cols(); ++j) {
        for (int i = 0; i < M.rows(); ++i) {
            if (M(i, j) < 0.0) {
                if (M(i, j) < -1e-12) {
                    throw NonStochastic(name + "(" + std::to_string(i) + "," +
                                        std::to_string(j) + ") = " +
                                        std::to_string(M(i, j)));
                }
                M(i, j) = 0.0;
            }
        }
        M.col(j) /= M.col(j).sum();
    }
    return M;
}

ReductionResult run_pipeline(const Hmm& h, const InitialSet& S,
                             const ReachableSpace& R, const Subspace& N,
                             const StrategySpec& strategy, double tol,
                             const std::string& mode) {
    const EffectiveSpace E = effective_orthogonal(R, N);
    const Eigen::VectorXd* custom =
        strategy.kind == PbarStrategy::Custom ? &strategy.custom : nullptr;
    const Eigen::VectorXd pbar = resolve_pbar(strategy.kind, E, h.n, custom);
    const Eigen::VectorXd pinv = wedge_inverse_on_support(pbar, E.space);

    std::vector<Eigen::VectorXd> algebra_gens;
    algebra_gens.reserve(E.eps.size());
    for (const auto& eps : E.eps) {
        algebra_gens.push_back(pinv.cwiseProduct(eps));
    }
    const Algebra A = generate_algebra(algebra_gens, tol);
    const ProjectionFactors f = stochastic_factors(A, pbar);

    ReductionResult result;
    result.reduced = validate_hmm(clamp_stochastic(f.R * h.P * f.J, "P_reduced"),
                                  clamp_stochastic(h.C * f.J, "C_reduced"));
    result.R = f.R;
    result.J = f.J;
    for (const auto& p0 : S.vectors) {
        Eigen::VectorXd q = f.R * p0;
        q = q.cwiseMax(0.0);
        result.reduced_initials.push_back(q / q.sum());
    }
    result.diagnostics.dim_N = N.dim();
    result.diagnostics.dim_R = R.space.dim();
    result.diagnostics.dim_RN = E.intersection.dim();
    result.diagnostics.dim_E = E.space.dim();
    result.diagnostics.dim_A = A.dim();
    result.diagnostics.pbar = pbar;
    result.diagnostics.mode = mode;
    return result;
}

}  // namespace

ReductionResult reduce_single_time(const Hmm& h, const InitialSet& S,
                                   const StrategySpec& strategy, double tol) {
    validate_initials(S.vectors, h.n);
    return run_pipeline(h, S, reachable(h, S, tol), nonobservable(h, tol),
                        strategy, tol, "single");
}

ReductionResult reduce_multi_time(const Hmm& h, const InitialSet& S,
                                  const StrategySpec& strategy, double tol) {
    validate_initials(S.vectors, h.n);
    return run_pipeline(h, S, conditioned_reachable(h, S, tol),
                        conditioned_nonobservable(h, tol), strategy, tol,
                        "multi");
}

PropagationCheck reduced_propagation_check(const ReductionResult& result,
                                           const Hmm& h, const InitialSet& S,
                                           double tol) {
    const ConditionedPropagators cp = conditioned_propagators(h);
    const Subspace Rc = conditioned_reachable(h, S, tol).space;
    const Eigen::MatrixXd restrict = Rc.projector();

    // Atoms are exactly the rows of the reduction matrix.
    const int d = result.reduced.n;
    Eigen::MatrixXd atom_proj = Eigen::MatrixXd::Zero(h.n, h.n);
    for (int j = 0; j < d; ++j) {
        const Eigen::VectorXd a = result.R.row(j).transpose();
        atom_proj += a * a.transpose() / a.squaredNorm();
    }
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(h.n, h.n);

    PropagationCheck check;
    for (int y = 0; y < h.m; ++y) {
        const Eigen::MatrixXd reduced_prop =
            Eigen::MatrixXd(result.reduced.emission_row(y).asDiagonal()) *
            result.reduced.P;
        const double sw =
            ((result.R * cp.transition[y] - reduced_prop * result.R) * restrict)
                .cwiseAbs()
                .maxCoeff();
        check.switching_residual = std::max(check.switching_residual, sw);
        const double inv =
            ((eye - atom_proj) * cp.conditioner[y] * atom_proj)
                .cwiseAbs()
                .maxCoeff();
        check.invariance_residual = std::max(check.invariance_residual, inv);
    }
    return check;
}

}  // namespace hmmreduce
