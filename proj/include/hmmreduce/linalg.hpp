#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hmmreduce/errors.hpp"

namespace hmmreduce {

inline constexpr double kDefaultRankTol = 1e-10;

/// A linear subspace of R^n held as an orthonormal basis. k = 0 encodes the
/// zero subspace. All lattice operations reuse the tolerance the space was
/// built with, so rank decisions stay mutually consistent.
struct Subspace {
    int ambient = 0;
    Eigen::MatrixXd basis;  // ambient x k, orthonormal columns
    double tol = kDefaultRankTol;

    int dim() const { return static_cast<int>(basis.cols()); }

    static Subspace zero(int n, double tol = kDefaultRankTol) {
        return Subspace{n, Eigen::MatrixXd(n, 0), tol};
    }
    static Subspace full(int n, double tol = kDefaultRankTol) {
        return Subspace{n, Eigen::MatrixXd::Identity(n, n), tol};
    }

    Eigen::MatrixXd projector() const { return basis * basis.transpose(); }

    /// Indices i with some basis vector nonzero at i (above 100*tol).
    std::vector<int> support() const;
};

Subspace span_of(int ambient, const std::vector<Eigen::VectorXd>& vectors,
                 double tol = kDefaultRankTol);
Subspace span_of_columns(const Eigen::MatrixXd& columns,
                         double tol = kDefaultRankTol);

Subspace intersect(const Subspace& U, const Subspace& V);

/// Orthogonal complement of W inside U (standard inner product). W must be
/// contained in U up to the inclusion residual.
Subspace complement_within(const Subspace& W, const Subspace& U);

Subspace orthogonal_complement(const Subspace& V);

/// Smallest subspace containing seed and invariant under every operator.
Subspace krylov_closure(const Subspace& seed,
                        const std::vector<Eigen::MatrixXd>& operators);

/// Kernel of the smallest row space containing seed_rows and closed under
/// right-multiplication by every operator.
Subspace dual_krylov_closure(int ambient,
                             const std::vector<Eigen::VectorXd>& seed_rows,
                             const std::vector<Eigen::MatrixXd>& operators,
                             double tol = kDefaultRankTol);

Eigen::VectorXd project(const Subspace& V, const Eigen::VectorXd& x);

/// Residual-based containment test: every column of W lies in U.
bool contains(const Subspace& U, const Eigen::MatrixXd& W_columns);

}  // namespace hmmreduce
