#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hmmreduce/errors.hpp"

namespace hmmreduce {

// Column-stochastic convention throughout: probability vectors are columns,
// transition and emission matrices satisfy 1^T P = 1^T and 1^T C = 1^T.
// Much HMM software is row-stochastic; files produced elsewhere may need
// transposing before use.
struct Hmm {
    int n = 0;  // hidden-state count
    int m = 0;  // output-symbol count
    Eigen::MatrixXd P;  // n x n transition matrix
    Eigen::MatrixXd C;  // m x n emission matrix

    /// Row y of C as a length-n column vector.
    Eigen::VectorXd emission_row(int y) const { return C.row(y).transpose(); }
};

struct InitialSet {
    std::vector<Eigen::VectorXd> vectors;
};

struct Diagnostics {
    int dim_N = 0;
    int dim_R = 0;
    int dim_RN = 0;  // dim of the reachable/non-observable intersection
    int dim_E = 0;
    int dim_A = 0;
    Eigen::VectorXd pbar;
    std::string mode;  // "single" or "multi"
};

struct ReductionResult {
    Hmm reduced;
    Eigen::MatrixXd R;  // d x n stochastic reduction
    Eigen::MatrixXd J;  // n x d stochastic injection
    std::vector<Eigen::VectorXd> reduced_initials;
    Diagnostics diagnostics;
};

inline constexpr double kDefaultValidationTol = 1e-9;

/// Checks shapes, nonnegativity and column sums; returns the validated model.
Hmm validate_hmm(const Eigen::MatrixXd& P, const Eigen::MatrixXd& C,
                 double tol = kDefaultValidationTol);

/// Checks that each vector in S is a probability vector of dimension n.
InitialSet validate_initials(const std::vector<Eigen::VectorXd>& vectors, int n,
                             double tol = kDefaultValidationTol);

std::pair<Hmm, InitialSet> load_model(const std::string& path,
                                      double tol = kDefaultValidationTol);
void save_model(const std::string& path, const Hmm& h, const InitialSet& S);

void save_result(const std::string& path, const ReductionResult& result);
ReductionResult load_result(const std::string& path,
                            double tol = kDefaultValidationTol);

}  // namespace hmmreduce
