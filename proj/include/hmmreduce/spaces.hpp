#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hmmreduce/linalg.hpp"
#include "hmmreduce/model.hpp"

namespace hmmreduce {

/// Per-symbol propagators diag(row y of C) * P and the matching initial
/// conditioners diag(row y of C). Summing the propagators over y gives P.
struct ConditionedPropagators {
    std::vector<Eigen::MatrixXd> transition;   // P_C^y
    std::vector<Eigen::MatrixXd> conditioner;  // diag(c_y)
};

ConditionedPropagators conditioned_propagators(const Hmm& h);

/// A reachable-type subspace together with probability-vector generators that
/// span it (one generator per dimension, collected greedily during the
/// Krylov iteration).
struct ReachableSpace {
    Subspace space;
    std::vector<Eigen::VectorXd> generators;
};

/// Largest P-invariant subspace inside ker C.
Subspace nonobservable(const Hmm& h, double tol = kDefaultRankTol);

/// Smallest P-invariant subspace containing span(S).
ReachableSpace reachable(const Hmm& h, const InitialSet& S,
                         double tol = kDefaultRankTol);

Subspace conditioned_nonobservable(const Hmm& h, double tol = kDefaultRankTol);

ReachableSpace conditioned_reachable(const Hmm& h, const InitialSet& S,
                                     double tol = kDefaultRankTol);

/// The orthogonal-complement effective subspace E of R cap N inside R, and
/// its projected probability generators eps_i = r_i - proj_{R cap N}(r_i).
struct EffectiveSpace {
    Subspace space;
    Subspace intersection;  // R cap N
    std::vector<Eigen::VectorXd> eps;
};

EffectiveSpace effective_orthogonal(const ReachableSpace& R, const Subspace& N);

enum class PbarStrategy { CorollaryMean, Uniform, Custom };

/// Resolves the reference vector used to build the algebra. corollary-mean
/// averages the eps generators; uniform is the flat vector 1/n; custom must
/// be positive on the support of E.
Eigen::VectorXd resolve_pbar(PbarStrategy strategy, const EffectiveSpace& E,
                             int ambient,
                             const Eigen::VectorXd* custom = nullptr);

}  // namespace hmmreduce
