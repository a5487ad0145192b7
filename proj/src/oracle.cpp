#include "hmmreduce/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hmmreduce/algebra.hpp"
#include "hmmreduce/reduction.hpp"

namespace hmmreduce {

Eigen::VectorXd single_time_marginal(const Hmm& h, const Eigen::VectorXd& p0,
                                     int t) {
    Eigen::VectorXd p = p0;
    for (int k = 0; k < t; ++k) p = h.P * p;
    return h.C * p;
}

double sequence_probability(const Hmm& h, const Eigen::VectorXd& p0,
                            const std::vector<int>& y_seq) {
    if (y_seq.empty()) throw SymbolOutOfRange("empty output sequence");
    for (int y : y_seq) {
        if (y < 0 || y >= h.m) {
            throw SymbolOutOfRange("symbol " + std::to_string(y) +
                                   " outside 0.." + std::to_string(h.m - 1));
        }
    }
    const ConditionedPropagators cp = conditioned_propagators(h);
    Eigen::VectorXd phi = cp.conditioner[y_seq[0]] * p0;
    for (std::size_t i = 1; i < y_seq.size(); ++i) {
        phi = cp.transition[y_seq[i]] * phi;
    }
    return phi.sum();
}

namespace {

std::int64_t pow_int(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::int64_t subtree_size(int m, int remaining_depth) {
    std::int64_t total = 0;
    for (int k = 1; k <= remaining_depth; ++k) total += pow_int(m, k);
    return total;
}

struct MultiEnumerator {
    const ConditionedPropagators* cp;
    const ConditionedPropagators* cp_reduced;
    int m;
    int horizon;
    double max_err = 0.0;
    std::vector<int> worst;
    std::vector<int> current;
    std::int64_t checked = 0;

    // Depth-first with the probability carried as a running pair of vectors.
    void descend(const Eigen::VectorXd& phi, const Eigen::VectorXd& phi_red,
                 int length) {
        ++checked;
        const double err = std::abs(phi.sum() - phi_red.sum());
        if (err > max_err) {
            max_err = err;
            worst = current;
        }
        if (length > horizon) return;
        if (phi.lpNorm<1>() < 1e-15 && phi_red.lpNorm<1>() < 1e-15) {
            // Below any reportable tolerance; count the subtree and cut.
            checked += subtree_size(m, horizon + 1 - length);
            return;
        }
        for (int y = 0; y < m; ++y) {
            current.push_back(y);
            descend(cp->transition[y] * phi, cp_reduced->transition[y] * phi_red,
                    length + 1);
            current.pop_back();
        }
    }
};

std::string sequence_string(const std::vector<int>& seq) {
    std::string s;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(seq[i]);
    }
    return s;
}

}  // namespace

EquivalenceReport verify_equivalence(const Hmm& h,
                                     const ReductionResult& result,
                                     const InitialSet& S, int horizon,
                                     double tol, std::int64_t cap) {
    if (horizon < 1) throw Error("verify_equivalence: horizon must be >= 1");
    EquivalenceReport report;
    report.mode = result.diagnostics.mode;
    report.horizon = horizon;

    if (report.mode == "single") {
        for (std::size_t s = 0; s < S.vectors.size(); ++s) {
            Eigen::VectorXd p = S.vectors[s];
            Eigen::VectorXd q = result.reduced_initials[s];
            for (int t = 0; t <= horizon; ++t) {
                const double err =
                    (h.C * p - result.reduced.C * q).cwiseAbs().maxCoeff();
                ++report.sequences_checked;
                if (err > report.max_abs_error) {
                    report.max_abs_error = err;
                    report.worst_case = "initial " + std::to_string(s) +
                                        ", t=" + std::to_string(t);
                }
                p = h.P * p;
                q = result.reduced.P * q;
            }
        }
    } else {
        const std::int64_t per_initial = subtree_size(h.m, horizon + 1);
        if (per_initial * static_cast<std::int64_t>(S.vectors.size()) > cap) {
            throw EnumerationCapExceeded(
                "enumeration would visit " +
                std::to_string(per_initial * (std::int64_t)S.vectors.size()) +
                " sequences, cap is " + std::to_string(cap));
        }
        const ConditionedPropagators cp = conditioned_propagators(h);
        const ConditionedPropagators cp_red =
            conditioned_propagators(result.reduced);
        for (std::size_t s = 0; s < S.vectors.size(); ++s) {
            MultiEnumerator en;
            en.cp = &cp;
            en.cp_reduced = &cp_red;
            en.m = h.m;
            en.horizon = horizon;
            for (int y0 = 0; y0 < h.m; ++y0) {
                en.current = {y0};
                en.descend(cp.conditioner[y0] * S.vectors[s],
                           cp_red.conditioner[y0] * result.reduced_initials[s],
                           1);
            }
            if (en.max_err > report.max_abs_error) {
                report.max_abs_error = en.max_err;
                report.worst_case = "initial " + std::to_string(s) +
                                    ", sequence (" + sequence_string(en.worst) +
                                    ")";
            }
            report.sequences_checked += en.checked;
        }
    }
    report.passed = report.max_abs_error <= tol;
    return report;
}

ConjectureProbe probe_effective_choices(const EffectiveSpace& E,
                                        int default_dim, int trials,
                                        std::uint64_t seed, double tol) {
    if (trials < 1) throw Error("probe needs at least one trial");
    ConjectureProbe probe;
    probe.seed = seed;
    probe.trials = trials;
    probe.default_dim = default_dim;
    if (E.intersection.dim() == 0) {
        // Observable-style case: no freedom in the effective subspace.
        probe.freedom = false;
        probe.min_alternative = default_dim;
        probe.median_alternative = default_dim;
        return probe;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> shift(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.2, 1.0);
    std::vector<int> dims;
    dims.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        std::vector<Eigen::VectorXd> shifted;
        shifted.reserve(E.eps.size());
        for (const auto& eps : E.eps) {
            Eigen::VectorXd coeffs(E.intersection.dim());
            for (int i = 0; i < coeffs.size(); ++i) coeffs(i) = shift(rng);
            shifted.push_back(eps + E.intersection.basis * coeffs);
        }
        const Subspace alt = span_of(E.space.ambient, shifted, tol);
        Eigen::VectorXd w = Eigen::VectorXd::Zero(E.space.ambient);
        for (int i : alt.support()) w(i) = weight(rng);
        const Eigen::VectorXd winv = wedge_inverse_on_support(w, alt);
        std::vector<Eigen::VectorXd> gens;
        gens.reserve(shifted.size());
        for (const auto& v : shifted) gens.push_back(winv.cwiseProduct(v));
        const int dim = generate_algebra(gens, tol).dim();
        dims.push_back(dim);
        if (dim < default_dim && !probe.counterexample_dim) {
            probe.counterexample_dim = dim;
            probe.counterexample_trial = static_cast<std::uint64_t>(t);
        }
    }
    std::sort(dims.begin(), dims.end());
    probe.min_alternative = dims.front();
    probe.median_alternative = dims[dims.size() / 2];
    return probe;
}

ConjectureProbe probe_conjecture(const Hmm& h, const InitialSet& S, int trials,
                                 std::uint64_t seed, double tol) {
    const ReachableSpace R = reachable(h, S, tol);
    const Subspace N = nonobservable(h, tol);
    const EffectiveSpace E = effective_orthogonal(R, N);
    const ReductionResult def = reduce_single_time(h, S, StrategySpec{}, tol);
    return probe_effective_choices(E, def.diagnostics.dim_A, trials, seed, tol);
}

}  // namespace hmmreduce
