#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hmmreduce/errors.hpp"
#include "hmmreduce/linalg.hpp"

namespace hmmreduce {

/// Commutative subalgebra of R^n (under the element-wise product), stored as
/// its atoms: disjoint 0/1 indicator vectors forming the finest resolution of
/// the identity. The algebra is unital iff the atoms sum to the all-ones
/// vector; otherwise their sum indicates the support.
struct Algebra {
    int ambient = 0;
    std::vector<Eigen::VectorXd> atoms;

    int dim() const { return static_cast<int>(atoms.size()); }

    Eigen::VectorXd support_indicator() const {
        Eigen::VectorXd s = Eigen::VectorXd::Zero(ambient);
        for (const auto& a : atoms) s += a;
        return s;
    }

    bool unital() const {
        return dim() > 0 && (support_indicator().array() > 0.5).all();
    }
};

/// Element-wise product (v ^ w)_i = v_i w_i.
Eigen::VectorXd wedge(const Eigen::VectorXd& v, const Eigen::VectorXd& w);

/// q with q_i = 1/p_i on the support of V and q_i = 0 elsewhere. p must be
/// strictly positive on that support.
Eigen::VectorXd wedge_inverse_on_support(const Eigen::VectorXd& p,
                                         const Subspace& V);

/// Minimal subalgebra containing the generators, via coordinate-profile
/// equivalence classes on an orthonormal basis of the span. Coordinates
/// outside the joint support belong to no atom.
Algebra generate_algebra(const std::vector<Eigen::VectorXd>& generators,
                         double tol = kDefaultRankTol);

/// Atoms of an already-closed algebra. Throws NotAnAlgebra if the span of the
/// input is not closed under the element-wise product.
std::vector<Eigen::VectorXd> idempotents_of(
    const std::vector<Eigen::VectorXd>& vectors, double tol = kDefaultRankTol);

struct SupportCombination {
    Eigen::VectorXd vector;
    Eigen::VectorXd coefficients;  // one nonzero coefficient per generator
};

/// A combination of all generators with nonzero coefficients whose support
/// equals the support of their span. Tries uniform weights first, then falls
/// back to deterministic perturbed weights avoiding the finite forbidden set.
SupportCombination full_support_combination(
    const std::vector<Eigen::VectorXd>& generators,
    double tol = kDefaultRankTol);

}  // namespace hmmreduce
