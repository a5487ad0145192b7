#include "hmmreduce/spaces.hpp"

#include <cmath>

#include "hmmreduce/algebra.hpp"

namespace hmmreduce {

ConditionedPropagators conditioned_propagators(const Hmm& h) {
    ConditionedPropagators cp;
    cp.transition.reserve(h.m);
    cp.conditioner.reserve(h.m);
    for (int y = 0; y < h.m; ++y) {
        const Eigen::MatrixXd D = h.emission_row(y).asDiagonal();
        cp.conditioner.push_back(D);
        cp.transition.push_back(D * h.P);
    }
    return cp;
}

Subspace nonobservable(const Hmm& h, double tol) {
    std::vector<Eigen::VectorXd> rows;
    rows.reserve(h.m);
    for (int y = 0; y < h.m; ++y) rows.push_back(h.emission_row(y));
    return dual_krylov_closure(h.n, rows, {h.P}, tol);
}

namespace {

/// Greedy Krylov generator collection: keeps only images that increase the
/// span, each normalized to a probability vector. Yields one generator per
/// dimension of the closure.
ReachableSpace grow_reachable(int n, const std::vector<Eigen::VectorXd>& seeds,
                              const std::vector<Eigen::MatrixXd>& operators,
                              double tol) {
    ReachableSpace out;
    Eigen::MatrixXd Q(n, 0);
    auto try_add = [&](const Eigen::VectorXd& candidate) -> bool {
        const double mass = candidate.sum();
        if (mass <= 1e-14) return false;
        const Eigen::VectorXd v = candidate / mass;
        Eigen::VectorXd r = v;
        if (Q.cols() > 0) {
            r -= Q * (Q.transpose() * v);
            r -= Q * (Q.transpose() * r);  // re-orthogonalize
        }
        const double norm = r.norm();
        if (norm <= tol * std::max(1.0, v.norm())) return false;
        Q.conservativeResize(Eigen::NoChange, Q.cols() + 1);
        Q.col(Q.cols() - 1) = r / norm;
        out.generators.push_back(v);
        return true;
    };
    for (const auto& s : seeds) try_add(s);
    std::size_t frontier_begin = 0;
    while (frontier_begin < out.generators.size()) {
        const std::size_t frontier_end = out.generators.size();
        for (std::size_t g = frontier_begin; g < frontier_end; ++g) {
            for (const auto& F : operators) {
                try_add(F * out.generators[g]);
            }
        }
        frontier_begin = frontier_end;
    }
    out.space = Subspace{n, Q, tol};
    return out;
}

}  // namespace

ReachableSpace reachable(const Hmm& h, const InitialSet& S, double tol) {
    return grow_reachable(h.n, S.vectors, {h.P}, tol);
}

Subspace conditioned_nonobservable(const Hmm& h, double tol) {
    const ConditionedPropagators cp = conditioned_propagators(h);
    // Row space of all 1^T P_C^{y_1..y_l} prefixes, grown by right
    // multiplication; seeded with the rows of C (whose sum is 1^T).
    std::vector<Eigen::VectorXd> rows;
    for (int y = 0; y < h.m; ++y) rows.push_back(h.emission_row(y));
    std::vector<Eigen::MatrixXd> right_ops;
    for (const auto& F : cp.transition) right_ops.push_back(F.transpose());
    const Subspace rowspace =
        krylov_closure(span_of(h.n, rows, tol), right_ops);
    // Absorb the l = 0 conditioning: every constraint row ends with a wedge
    // against an emission row.
    std::vector<Eigen::VectorXd> constraints;
    for (int c = 0; c < rowspace.dim(); ++c) {
        for (int y = 0; y < h.m; ++y) {
            constraints.push_back(
                rowspace.basis.col(c).cwiseProduct(h.emission_row(y)));
        }
    }
    return orthogonal_complement(span_of(h.n, constraints, tol));
}

ReachableSpace conditioned_reachable(const Hmm& h, const InitialSet& S,
                                     double tol) {
    const ConditionedPropagators cp = conditioned_propagators(h);
    std::vector<Eigen::VectorXd> seeds;
    for (const auto& p0 : S.vectors) {
        for (int y = 0; y < h.m; ++y) {
            seeds.push_back(cp.conditioner[y] * p0);
        }
    }
    return grow_reachable(h.n, seeds, cp.transition, tol);
}

EffectiveSpace effective_orthogonal(const ReachableSpace& R,
                                    const Subspace& N) {
    if (R.space.ambient != N.ambient) {
        throw DimensionMismatch("effective_orthogonal: ambient mismatch");
    }
    EffectiveSpace out;
    out.intersection = intersect(R.space, N);
    if (out.intersection.dim() == 0) {
        out.space = R.space;
        out.eps = R.generators;
        return out;
    }
    out.space = complement_within(out.intersection, R.space);
    out.eps.reserve(R.generators.size());
    for (const auto& r : R.generators) {
        out.eps.push_back(r - project(out.intersection, r));
    }
    return out;
}

Eigen::VectorXd resolve_pbar(PbarStrategy strategy, const EffectiveSpace& E,
                             int ambient, const Eigen::VectorXd* custom) {
    switch (strategy) {
        case PbarStrategy::Uniform:
            return Eigen::VectorXd::Constant(ambient, 1.0 / ambient);
        case PbarStrategy::CorollaryMean: {
            if (E.eps.empty()) {
                throw EmptyGenerators("corollary-mean needs eps generators");
            }
            Eigen::VectorXd pbar = Eigen::VectorXd::Zero(ambient);
            for (const auto& e : E.eps) pbar += e;
            return pbar / static_cast<double>(E.eps.size());
        }
        case PbarStrategy::Custom: {
            if (custom == nullptr || custom->size() != ambient) {
                throw UnsupportedCustomVector("custom p has wrong length");
            }
            for (int i : E.space.support()) {
                if ((*custom)(i) <= 0.0) {
                    throw UnsupportedCustomVector(
                        "custom p is not positive at coordinate " +
                        std::to_string(i) + " of supp(E)");
                }
            }
            return *custom;
        }
    }
    throw Error("unreachable strategy");
}

}  // namespace hmmreduce
