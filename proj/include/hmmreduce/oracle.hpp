#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hmmreduce/model.hpp"
#include "hmmreduce/spaces.hpp"

namespace hmmreduce {

/// Output marginal C P^t p0.
Eigen::VectorXd single_time_marginal(const Hmm& h, const Eigen::VectorXd& p0,
                                     int t);

/// Probability of an output sequence (symbols 0..m-1) under the product-form
/// propagator.
double sequence_probability(const Hmm& h, const Eigen::VectorXd& p0,
                            const std::vector<int>& y_seq);

struct EquivalenceReport {
    std::string mode;  // "single" or "multi"
    int horizon = 0;
    double max_abs_error = 0.0;
    std::string worst_case;
    std::int64_t sequences_checked = 0;
    bool passed = false;
};

inline constexpr std::int64_t kDefaultEnumerationCap = 10'000'000;

/// Exhaustive check of the defining equalities: single mode compares output
/// marginals for t <= horizon; multi mode enumerates every output sequence of
/// length up to horizon + 1 and compares sequence probabilities.
EquivalenceReport verify_equivalence(const Hmm& h,
                                     const ReductionResult& result,
                                     const InitialSet& S, int horizon,
                                     double tol,
                                     std::int64_t cap = kDefaultEnumerationCap);

struct ConjectureProbe {
    std::uint64_t seed = 0;
    int trials = 0;
    int default_dim = 0;     // dim alg(pbar^-1 ^ E_perp)
    int min_alternative = 0;
    int median_alternative = 0;
    bool freedom = true;  // false when R cap N = {0}
    std::optional<int> counterexample_dim;
    std::optional<std::uint64_t> counterexample_trial;
};

/// Samples alternative effective subspaces E = span{eps_i + n_i} with random
/// shifts n_i in R cap N and random nonnegative reference vectors, recording
/// the resulting algebra dimensions against the default pipeline's. Never
/// asserts the minimality conjecture; only reports counterexamples.
ConjectureProbe probe_conjecture(const Hmm& h, const InitialSet& S, int trials,
                                 std::uint64_t seed,
                                 double tol = kDefaultRankTol);

/// Core of the probe, exposed for space-level experiments.
ConjectureProbe probe_effective_choices(const EffectiveSpace& E,
                                        int default_dim, int trials,
                                        std::uint64_t seed,
                                        double tol = kDefaultRankTol);

}  // namespace hmmreduce
