#pragma once

#include <Eigen/Dense>

#include "hmmreduce/algebra.hpp"
#include "hmmreduce/errors.hpp"

namespace hmmreduce {

/// Stochastic factorization of the dual conditional expectation:
/// J*R equals the dual projector, R*J = I_d, J stochastic and R stochastic
/// over the support of the algebra.
struct ProjectionFactors {
    Eigen::MatrixXd J;  // n x d injection
    Eigen::MatrixXd R;  // d x n reduction
    Algebra algebra;
    Eigen::VectorXd p;  // reference vector used for the weights
};

/// Matrix of the conditional expectation onto the algebra with reference
/// vector p: sum_j a_j (p ^ a_j)^T / <p, a_j>.
Eigen::MatrixXd conditional_expectation(const Algebra& A,
                                        const Eigen::VectorXd& p);

ProjectionFactors stochastic_factors(const Algebra& A, const Eigen::VectorXd& p);

}  // namespace hmmreduce
