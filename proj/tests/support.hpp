#pragma once

#include <random>
#include <vector>

#include "hmmreduce/algebra.hpp"
#include "hmmreduce/linalg.hpp"
#include "hmmreduce/model.hpp"

namespace testsupport {

using hmmreduce::Hmm;
using hmmreduce::InitialSet;

// 3-state chain started in equilibrium with a merged output pair.
inline std::pair<Hmm, InitialSet> equilibrium3() {
    Eigen::MatrixXd P(3, 3);
    P << 2.0 / 5, 0, 1.0 / 5,
         0, 2.0 / 5, 1.0 / 5,
         3.0 / 5, 3.0 / 5, 3.0 / 5;
    Eigen::MatrixXd C(2, 3);
    C << 1, 1, 0,
         0, 0, 1;
    Eigen::VectorXd p0(3);
    p0 << 1.0 / 5, 1.0 / 5, 3.0 / 5;
    return {hmmreduce::validate_hmm(P, C), InitialSet{{p0}}};
}

// 5-state chain with uniform equilibrium and three output symbols.
inline std::pair<Hmm, InitialSet> merged5() {
    Eigen::MatrixXd P(5, 5);
    P << 1.0 / 3, 1.0 / 6, 1.0 / 4, 1.0 / 4, 0,
         1.0 / 6, 1.0 / 3, 0, 1.0 / 4, 1.0 / 4,
         1.0 / 3, 1.0 / 6, 1.0 / 4, 1.0 / 4, 0,
         1.0 / 6, 1.0 / 6, 1.0 / 6, 0, 1.0 / 2,
         0, 1.0 / 6, 1.0 / 3, 1.0 / 4, 1.0 / 4;
    Eigen::MatrixXd C(3, 5);
    C << 1, 1, 1, 0, 0,
         0, 0, 0, 1, 0,
         0, 0, 0, 0, 1;
    Eigen::VectorXd p0 = Eigen::VectorXd::Constant(5, 1.0 / 5);
    return {hmmreduce::validate_hmm(P, C), InitialSet{{p0}}};
}

// 4-state chain with two admissible point initial conditions.
inline std::pair<Hmm, InitialSet> twostart4() {
    Eigen::MatrixXd P(4, 4);
    P << 1.0 / 2, 0, 1.0 / 3, 1.0 / 4,
         0, 1.0 / 3, 1.0 / 3, 1.0 / 4,
         1.0 / 2, 0, 1.0 / 3, 0,
         0, 2.0 / 3, 0, 1.0 / 2;
    Eigen::MatrixXd C(2, 4);
    C << 1.0 / 4, 1.0 / 4, 1.0 / 2, 7.0 / 16,
         3.0 / 4, 3.0 / 4, 1.0 / 2, 9.0 / 16;
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(4);
    Eigen::VectorXd e2 = Eigen::VectorXd::Zero(4);
    e1(0) = 1.0;
    e2(1) = 1.0;
    return {hmmreduce::validate_hmm(P, C), InitialSet{{e1, e2}}};
}

inline Eigen::VectorXd random_probability_vector(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = u(rng);
    return v / v.sum();
}

inline Hmm random_hmm(int n, int m, std::mt19937_64& rng) {
    Eigen::MatrixXd P(n, n), C(m, n);
    for (int j = 0; j < n; ++j) {
        P.col(j) = random_probability_vector(n, rng);
        C.col(j) = random_probability_vector(m, rng);
    }
    return hmmreduce::validate_hmm(P, C);
}

// Random HMM with lumpable structure so that reductions are nontrivial:
// states are grouped into blocks, emissions and aggregated transitions
// depend only on the block.
inline Hmm random_lumpable_hmm(int n, int m, int blocks, std::mt19937_64& rng) {
    std::vector<int> block_of(n);
    for (int i = 0; i < n; ++i) block_of[i] = i % blocks;
    Eigen::MatrixXd Pb(blocks, blocks);
    for (int j = 0; j < blocks; ++j) {
        Pb.col(j) = random_probability_vector(blocks, rng);
    }
    Eigen::MatrixXd Cb(m, blocks);
    for (int j = 0; j < blocks; ++j) {
        Cb.col(j) = random_probability_vector(m, rng);
    }
    // Split each block column's mass across the block members.
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd C(m, n);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int j = 0; j < n; ++j) {
        for (int b = 0; b < blocks; ++b) {
            std::vector<int> members;
            for (int i = 0; i < n; ++i) {
                if (block_of[i] == b) members.push_back(i);
            }
            Eigen::VectorXd split(members.size());
            for (int k = 0; k < split.size(); ++k) split(k) = u(rng);
            split *= Pb(b, block_of[j]) / split.sum();
            for (std::size_t k = 0; k < members.size(); ++k) {
                P(members[k], j) = split(static_cast<int>(k));
            }
        }
        C.col(j) = Cb.col(block_of[j]);
    }
    return hmmreduce::validate_hmm(P, C);
}

inline InitialSet random_initials(int n, int count, std::mt19937_64& rng) {
    InitialSet S;
    for (int k = 0; k < count; ++k) {
        S.vectors.push_back(random_probability_vector(n, rng));
    }
    return S;
}

// Independent oracle: closure of span(generators) under the element-wise
// product, by repeated pairwise products and re-spanning.
inline hmmreduce::Subspace wedge_closure(
    const std::vector<Eigen::VectorXd>& generators, double tol = 1e-10) {
    const int n = static_cast<int>(generators.front().size());
    hmmreduce::Subspace sp = hmmreduce::span_of(n, generators, tol);
    for (int round = 0; round <= n; ++round) {
        std::vector<Eigen::VectorXd> vs;
        for (int a = 0; a < sp.dim(); ++a) vs.push_back(sp.basis.col(a));
        for (int a = 0; a < sp.dim(); ++a) {
            for (int b = a; b < sp.dim(); ++b) {
                Eigen::VectorXd w = sp.basis.col(a).cwiseProduct(sp.basis.col(b));
                const double norm = w.norm();
                if (norm > tol) vs.push_back(w / norm);
            }
        }
        hmmreduce::Subspace next = hmmreduce::span_of(n, vs, tol);
        if (next.dim() == sp.dim()) return next;
        sp = next;
    }
    return sp;
}

}  // namespace testsupport
