#include "hmmreduce/projection.hpp"

#include <cmath>

namespace hmmreduce {

namespace {

std::vector<double> atom_weights(const Algebra& A, const Eigen::VectorXd& p) {
    if (p.size() != A.ambient) {
        throw DimensionMismatch("reference vector length does not match algebra");
    }
    const double floor = 1e-12 * p.cwiseAbs().sum();
    std::vector<double> weights;
    weights.reserve(A.atoms.size());
    for (std::size_t j = 0; j < A.atoms.size(); ++j) {
        const double w = p.dot(A.atoms[j]);
        if (w <= floor) {
            throw DegenerateWeight("atom " + std::to_string(j) +
                                   " has weight " + std::to_string(w));
        }
        weights.push_back(w);
    }
    return weights;
}

}  // namespace

Eigen::MatrixXd conditional_expectation(const Algebra& A,
                                        const Eigen::VectorXd& p) {
    const auto weights = atom_weights(A, p);
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(A.ambient, A.ambient);
    for (std::size_t j = 0; j < A.atoms.size(); ++j) {
        const Eigen::VectorXd pa = p.cwiseProduct(A.atoms[j]);
        E += A.atoms[j] * pa.transpose() / weights[j];
    }
    return E;
}

ProjectionFactors stochastic_factors(const Algebra& A,
                                     const Eigen::VectorXd& p) {
    const auto weights = atom_weights(A, p);
    const int d = A.dim();
    ProjectionFactors f;
    f.J = Eigen::MatrixXd::Zero(A.ambient, d);
    f.R = Eigen::MatrixXd::Zero(d, A.ambient);
    for (int j = 0; j < d; ++j) {
        f.J.col(j) = p.cwiseProduct(A.atoms[j]) / weights[j];
        f.R.row(j) = A.atoms[j].transpose();
    }
    f.algebra = A;
    f.p = p;
    return f;
}

}  // namespace hmmreduce
