#include "hmmreduce/linalg.hpp"

#include <cmath>

namespace hmmreduce {

namespace {

double inclusion_threshold(const Subspace& s) {
    return 100.0 * s.tol * std::sqrt(static_cast<double>(s.ambient));
}

}  // namespace

std::vector<int> Subspace::support() const {
    std::vector<int> idx;
    const double thresh = 100.0 * tol;
    for (int i = 0; i < ambient; ++i) {
        if (dim() > 0 && basis.row(i).cwiseAbs().maxCoeff() > thresh) {
            idx.push_back(i);
        }
    }
    return idx;
}

Subspace span_of_columns(const Eigen::MatrixXd& columns, double tol) {
    const int n = static_cast<int>(columns.rows());
    if (columns.cols() == 0) return Subspace::zero(n, tol);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double thresh = tol * std::max(smax, 1.0);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > thresh) ++rank;
    Subspace out;
    out.ambient = n;
    out.basis = svd.matrixU().leftCols(rank);
    out.tol = tol;
    return out;
}

Subspace span_of(int ambient, const std::vector<Eigen::VectorXd>& vectors,
                 double tol) {
    Eigen::MatrixXd M(ambient, static_cast<int>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        if (vectors[k].size() != ambient) {
            throw DimensionMismatch("span_of: vector " + std::to_string(k) +
                                    " has length " +
                                    std::to_string(vectors[k].size()) +
                                    ", ambient is " + std::to_string(ambient));
        }
        M.col(static_cast<int>(k)) = vectors[k];
    }
    return span_of_columns(M, tol);
}

Subspace intersect(const Subspace& U, const Subspace& V) {
    if (U.ambient != V.ambient) {
        throw DimensionMismatch("intersect: ambient dimensions differ");
    }
    const int n = U.ambient;
    const double tol = U.tol;
    if (U.dim() == 0 || V.dim() == 0) return Subspace::zero(n, tol);
    // Null space of the stacked complement projectors.
    Eigen::MatrixXd stacked(2 * n, n);
    stacked.topRows(n) = Eigen::MatrixXd::Identity(n, n) - U.projector();
    stacked.bottomRows(n) = Eigen::MatrixXd::Identity(n, n) - V.projector();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double thresh = tol * std::max(smax, 1.0);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > thresh) ++rank;
    Subspace out;
    out.ambient = n;
    out.basis = svd.matrixV().rightCols(n - rank);
    out.tol = tol;
    return out;
}

bool contains(const Subspace& U, const Eigen::MatrixXd& W_columns) {
    if (W_columns.cols() == 0) return true;
    const Eigen::MatrixXd residual = W_columns - U.projector() * W_columns;
    return residual.norm() <= inclusion_threshold(U) *
                                  std::max(1.0, W_columns.norm());
}

Subspace complement_within(const Subspace& W, const Subspace& U) {
    if (W.ambient != U.ambient) {
        throw DimensionMismatch("complement_within: ambient dimensions differ");
    }
    if (!contains(U, W.basis)) {
        throw NotContained("complement_within: W is not contained in U");
    }
    if (W.dim() == 0) return U;
    // Project W out of U's basis and re-span.
    const Eigen::MatrixXd residual =
        U.basis - W.basis * (W.basis.transpose() * U.basis);
    Subspace out = span_of_columns(residual, U.tol);
    return out;
}

Subspace orthogonal_complement(const Subspace& V) {
    return complement_within(V, Subspace::full(V.ambient, V.tol));
}

Subspace krylov_closure(const Subspace& seed,
                        const std::vector<Eigen::MatrixXd>& operators) {
    const int n = seed.ambient;
    for (const auto& F : operators) {
        if (F.rows() != n || F.cols() != n) {
            throw DimensionMismatch("krylov_closure: operator shape mismatch");
        }
    }
    Subspace cur = seed;
    for (int iter = 0; iter <= n; ++iter) {
        if (cur.dim() == n) return cur;
        const int k = cur.dim();
        Eigen::MatrixXd images(n, k * static_cast<int>(operators.size() + 1));
        images.leftCols(k) = cur.basis;
        int col = k;
        for (const auto& F : operators) {
            images.middleCols(col, k) = F * cur.basis;
            col += k;
        }
        Subspace next = span_of_columns(images, cur.tol);
        if (next.dim() == cur.dim()) return next;
        cur = next;
    }
    return cur;
}

Subspace dual_krylov_closure(int ambient,
                             const std::vector<Eigen::VectorXd>& seed_rows,
                             const std::vector<Eigen::MatrixXd>& operators,
                             double tol) {
    std::vector<Eigen::MatrixXd> transposed;
    transposed.reserve(operators.size());
    for (const auto& F : operators) {
        if (F.rows() != ambient || F.cols() != ambient) {
            throw DimensionMismatch("dual_krylov_closure: operator shape mismatch");
        }
        transposed.push_back(F.transpose());
    }
    const Subspace rowspace =
        krylov_closure(span_of(ambient, seed_rows, tol), transposed);
    return orthogonal_complement(rowspace);
}

Eigen::VectorXd project(const Subspace& V, const Eigen::VectorXd& x) {
    if (x.size() != V.ambient) {
        throw DimensionMismatch("project: vector length does not match ambient");
    }
    if (V.dim() == 0) return Eigen::VectorXd::Zero(V.ambient);
    return V.basis * (V.basis.transpose() * x);
}

}  // namespace hmmreduce
