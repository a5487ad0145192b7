#pragma once

#include "hmmreduce/model.hpp"
#include "hmmreduce/spaces.hpp"

namespace hmmreduce {

struct StrategySpec {
    PbarStrategy kind = PbarStrategy::CorollaryMean;
    Eigen::VectorXd custom;  // used when kind == Custom
};

/// Reduction preserving the single-time output marginals for every initial
/// condition in span(S).
ReductionResult reduce_single_time(const Hmm& h, const InitialSet& S,
                                   const StrategySpec& strategy = {},
                                   double tol = kDefaultRankTol);

/// Reduction preserving the full multi-time output distribution.
ReductionResult reduce_multi_time(const Hmm& h, const InitialSet& S,
                                  const StrategySpec& strategy = {},
                                  double tol = kDefaultRankTol);

/// Post-reduction self-test residuals: the switching commutation
/// R P_C^y = P_check_C^y R on the conditioned reachable space, and the
/// diag(c_y)-invariance of the algebra span.
struct PropagationCheck {
    double switching_residual = 0.0;
    double invariance_residual = 0.0;
};

PropagationCheck reduced_propagation_check(const ReductionResult& result,
                                           const Hmm& h, const InitialSet& S,
                                           double tol = kDefaultRankTol);

}  // namespace hmmreduce
