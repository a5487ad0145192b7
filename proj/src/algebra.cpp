#include "hmmreduce/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hmmreduce {

Eigen::VectorXd wedge(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    if (v.size() != w.size()) {
        throw DimensionMismatch("wedge: vector lengths differ");
    }
    return v.cwiseProduct(w);
}

Eigen::VectorXd wedge_inverse_on_support(const Eigen::VectorXd& p,
                                         const Subspace& V) {
    if (p.size() != V.ambient) {
        throw DimensionMismatch("wedge_inverse_on_support: length mismatch");
    }
    const double floor = 1e-12 * std::max(1.0, p.cwiseAbs().maxCoeff());
    Eigen::VectorXd q = Eigen::VectorXd::Zero(V.ambient);
    for (int i : V.support()) {
        if (p(i) <= floor) {
            throw ZeroOnSupport("p is not positive at coordinate " +
                                std::to_string(i) +
                                " inside the support of the subspace");
        }
        q(i) = 1.0 / p(i);
    }
    return q;
}

namespace {

int find_root(std::vector<int>& parent, int i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

std::vector<Eigen::VectorXd> atoms_from_profiles(const Eigen::MatrixXd& basis,
                                                 const std::vector<int>& support,
                                                 int ambient, double tol) {
    // Coordinates merge iff their profile rows agree entrywise (per-column
    // scale already normalized by orthonormality of the basis).
    const int k = static_cast<int>(basis.cols());
    std::vector<double> col_scale(k);
    for (int c = 0; c < k; ++c) {
        col_scale[c] = tol * std::max(1.0, basis.col(c).cwiseAbs().maxCoeff());
    }
    const int s = static_cast<int>(support.size());
    std::vector<int> parent(s);
    std::iota(parent.begin(), parent.end(), 0);
    for (int a = 0; a < s; ++a) {
        for (int b = a + 1; b < s; ++b) {
            bool equal = true;
            for (int c = 0; c < k && equal; ++c) {
                if (std::abs(basis(support[a], c) - basis(support[b], c)) >
                    col_scale[c]) {
                    equal = false;
                }
            }
            if (equal) {
                parent[find_root(parent, b)] = find_root(parent, a);
            }
        }
    }
    // One atom per class, ordered by smallest contained coordinate.
    std::vector<Eigen::VectorXd> atoms;
    std::vector<int> class_of_root(s, -1);
    for (int a = 0; a < s; ++a) {
        const int r = find_root(parent, a);
        if (class_of_root[r] < 0) {
            class_of_root[r] = static_cast<int>(atoms.size());
            atoms.push_back(Eigen::VectorXd::Zero(ambient));
        }
        atoms[class_of_root[r]](support[a]) = 1.0;
    }
    return atoms;
}

}  // namespace

Algebra generate_algebra(const std::vector<Eigen::VectorXd>& generators,
                         double tol) {
    if (generators.empty()) {
        throw EmptyGenerators("generate_algebra: no generators");
    }
    const int n = static_cast<int>(generators.front().size());
    const Subspace sp = span_of(n, generators, tol);
    Algebra alg;
    alg.ambient = n;
    alg.atoms = atoms_from_profiles(sp.basis, sp.support(), n, tol);
    return alg;
}

std::vector<Eigen::VectorXd> idempotents_of(
    const std::vector<Eigen::VectorXd>& vectors, double tol) {
    if (vectors.empty()) {
        throw EmptyGenerators("idempotents_of: no vectors");
    }
    const int n = static_cast<int>(vectors.front().size());
    const Subspace sp = span_of(n, vectors, tol);
    // Closure check: products of basis vectors must stay in the span.
    const Eigen::MatrixXd proj = sp.projector();
    for (int a = 0; a < sp.dim(); ++a) {
        for (int b = a; b < sp.dim(); ++b) {
            const Eigen::VectorXd w = sp.basis.col(a).cwiseProduct(sp.basis.col(b));
            const double residual = (w - proj * w).norm();
            if (residual > 100.0 * tol * std::max(1.0, w.norm())) {
                throw NotAnAlgebra("span is not closed under the element-wise "
                                   "product (residual " +
                                   std::to_string(residual) + ")");
            }
        }
    }
    return atoms_from_profiles(sp.basis, sp.support(), n, tol);
}

namespace {

bool support_matches(const Eigen::VectorXd& w, const std::vector<int>& support,
                     double floor) {
    for (int i : support) {
        if (std::abs(w(i)) <= floor) return false;
    }
    return true;
}

}  // namespace

SupportCombination full_support_combination(
    const std::vector<Eigen::VectorXd>& generators, double tol) {
    if (generators.empty()) {
        throw EmptyGenerators("full_support_combination: no generators");
    }
    const int n = static_cast<int>(generators.front().size());
    for (const auto& g : generators) {
        if (g.size() != n) {
            throw DimensionMismatch("full_support_combination: length mismatch");
        }
    }
    const int N = static_cast<int>(generators.size());
    const Subspace sp = span_of(n, generators, tol);
    const std::vector<int> target = sp.support();
    double scale = 0.0;
    for (const auto& g : generators) scale = std::max(scale, g.cwiseAbs().maxCoeff());
    const double floor = 1e-9 * std::max(scale, 1.0) / N;

    // Uniform weights first.
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (const auto& g : generators) w += g / N;
    if (support_matches(w, target, floor)) {
        SupportCombination out;
        out.vector = w;
        out.coefficients = Eigen::VectorXd::Constant(N, 1.0 / N);
        return out;
    }

    // Iterative fallback: add generators one at a time, picking each
    // coefficient from a fixed sequence and rejecting near-cancellations.
    SupportCombination out;
    out.coefficients = Eigen::VectorXd::Zero(N);
    w = generators[0];
    out.coefficients(0) = 1.0;
    for (int i = 1; i < N; ++i) {
        const Eigen::VectorXd& g = generators[i];
        bool accepted = false;
        for (int attempt = 1; attempt <= 64 && !accepted; ++attempt) {
            const double lambda = 1.0 / (attempt + 0.5);
            const Eigen::VectorXd cand = w + lambda * g;
            bool ok = true;
            for (int j = 0; j < n && ok; ++j) {
                const bool relevant =
                    std::abs(w(j)) > floor || std::abs(g(j)) > floor;
                if (relevant && std::abs(cand(j)) <= floor) ok = false;
            }
            if (ok) {
                w = cand;
                out.coefficients(i) = lambda;
                accepted = true;
            }
        }
        if (!accepted) {
            throw Error("full_support_combination: coefficient search failed");
        }
    }
    if (!support_matches(w, target, floor)) {
        throw Error("full_support_combination: combination lost support");
    }
    out.vector = w;
    return out;
}

}  // namespace hmmreduce
