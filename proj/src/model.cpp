#include "hmmreduce/model.hpp"

#include <fstream>
#include <json.hpp>

namespace hmmreduce {

using nlohmann::json;

namespace {

void check_stochastic(const Eigen::MatrixXd& M, const std::string& name,
                      double tol) {
    for (int j = 0; j < M.cols(); ++j) {
        for (int i = 0; i < M.rows(); ++i) {
            if (M(i, j) < -tol) {
                throw NegativeEntry(name + "(" + std::to_string(i) + "," +
                                    std::to_string(j) + ") = " +
                                    std::to_string(M(i, j)) + " is negative");
            }
        }
        const double s = M.col(j).sum();
        if (std::abs(s - 1.0) > tol) {
            throw NonStochastic("column " + std::to_string(j) + " of " + name +
                                " sums to " + std::to_string(s));
        }
    }
}

json matrix_to_json(const Eigen::MatrixXd& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, int rows, int cols,
                                 const std::string& name) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows) {
        throw ParseError(name + ": expected " + std::to_string(rows) +
                         " rows, got " + std::to_string(j.size()));
    }
    Eigen::MatrixXd M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            throw ParseError(name + " row " + std::to_string(i) +
                             ": expected " + std::to_string(cols) + " entries, got " +
                             std::to_string(row.size()));
        }
        for (int k = 0; k < cols; ++k) {
            if (!row[k].is_number()) {
                throw ParseError(name + "(" + std::to_string(i) + "," +
                                 std::to_string(k) + ") is not a number");
            }
            M(i, k) = row[k].get<double>();
        }
    }
    return M;
}

std::vector<Eigen::VectorXd> vectors_from_json(const json& j, int dim,
                                               const std::string& name) {
    if (!j.is_array()) throw ParseError(name + " must be a list of vectors");
    std::vector<Eigen::VectorXd> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Eigen::MatrixXd row = matrix_from_json(json::array({j[i]}), 1, dim,
                                               name + "[" + std::to_string(i) + "]");
        out.push_back(row.row(0).transpose());
    }
    return out;
}

json vectors_to_json(const std::vector<Eigen::VectorXd>& vs) {
    json out = json::array();
    for (const auto& v : vs) {
        json row = json::array();
        for (int i = 0; i < v.size(); ++i) row.push_back(v(i));
        out.push_back(std::move(row));
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

int read_positive_int(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number_integer()) {
        throw ParseError("missing or non-integer field '" + field + "'");
    }
    const int v = j[field].get<int>();
    if (v <= 0) throw ParseError("field '" + field + "' must be positive");
    return v;
}

}  // namespace

Hmm validate_hmm(const Eigen::MatrixXd& P, const Eigen::MatrixXd& C,
                 double tol) {
    if (P.rows() != P.cols()) {
        throw ShapeMismatch("P must be square, got " + std::to_string(P.rows()) +
                            "x" + std::to_string(P.cols()));
    }
    if (C.cols() != P.cols()) {
        throw ShapeMismatch("C has " + std::to_string(C.cols()) +
                            " columns, P has " + std::to_string(P.cols()));
    }
    if (P.rows() == 0 || C.rows() == 0) throw ShapeMismatch("empty model");
    check_stochastic(P, "P", tol);
    check_stochastic(C, "C", tol);
    Hmm h;
    h.n = static_cast<int>(P.rows());
    h.m = static_cast<int>(C.rows());
    h.P = P;
    h.C = C;
    return h;
}

InitialSet validate_initials(const std::vector<Eigen::VectorXd>& vectors, int n,
                             double tol) {
    if (vectors.empty()) throw ValidationError("initial set is empty");
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        const auto& v = vectors[k];
        if (v.size() != n) {
            throw DimensionMismatch("initial vector " + std::to_string(k) +
                                    " has length " + std::to_string(v.size()) +
                                    ", expected " + std::to_string(n));
        }
        if (v.minCoeff() < -tol) {
            throw NegativeEntry("initial vector " + std::to_string(k) +
                                " has a negative entry");
        }
        if (std::abs(v.sum() - 1.0) > tol) {
            throw NonStochastic("initial vector " + std::to_string(k) +
                                " sums to " + std::to_string(v.sum()));
        }
    }
    return InitialSet{vectors};
}

std::pair<Hmm, InitialSet> load_model(const std::string& path, double tol) {
    const json j = read_json_file(path);
    const int n = read_positive_int(j, "n");
    const int m = read_positive_int(j, "m");
    if (!j.contains("P") || !j.contains("C") || !j.contains("initials")) {
        throw ParseError(path + ": model file needs fields P, C, initials");
    }
    Eigen::MatrixXd P = matrix_from_json(j["P"], n, n, "P");
    Eigen::MatrixXd C = matrix_from_json(j["C"], m, n, "C");
    Hmm h = validate_hmm(P, C, tol);
    InitialSet S =
        validate_initials(vectors_from_json(j["initials"], n, "initials"), n, tol);
    return {std::move(h), std::move(S)};
}

void save_model(const std::string& path, const Hmm& h, const InitialSet& S) {
    json j;
    j["n"] = h.n;
    j["m"] = h.m;
    j["P"] = matrix_to_json(h.P);
    j["C"] = matrix_to_json(h.C);
    j["initials"] = vectors_to_json(S.vectors);
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

void save_result(const std::string& path, const ReductionResult& result) {
    json j;
    const int d = result.reduced.n;
    j["d"] = d;
    j["m"] = result.reduced.m;
    j["n"] = static_cast<int>(result.R.cols());
    j["P_reduced"] = matrix_to_json(result.reduced.P);
    j["C_reduced"] = matrix_to_json(result.reduced.C);
    j["R"] = matrix_to_json(result.R);
    j["J"] = matrix_to_json(result.J);
    j["initials_reduced"] = vectors_to_json(result.reduced_initials);
    json diag;
    diag["dim_N"] = result.diagnostics.dim_N;
    diag["dim_R"] = result.diagnostics.dim_R;
    diag["dim_RN"] = result.diagnostics.dim_RN;
    diag["dim_E"] = result.diagnostics.dim_E;
    diag["dim_A"] = result.diagnostics.dim_A;
    json pbar = json::array();
    for (int i = 0; i < result.diagnostics.pbar.size(); ++i) {
        pbar.push_back(result.diagnostics.pbar(i));
    }
    diag["pbar"] = std::move(pbar);
    diag["mode"] = result.diagnostics.mode;
    j["diagnostics"] = std::move(diag);
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

ReductionResult load_result(const std::string& path, double tol) {
    const json j = read_json_file(path);
    const int d = read_positive_int(j, "d");
    const int m = read_positive_int(j, "m");
    const int n = read_positive_int(j, "n");
    ReductionResult r;
    r.reduced = validate_hmm(matrix_from_json(j.at("P_reduced"), d, d, "P_reduced"),
                             matrix_from_json(j.at("C_reduced"), m, d, "C_reduced"),
                             tol);
    r.R = matrix_from_json(j.at("R"), d, n, "R");
    r.J = matrix_from_json(j.at("J"), n, d, "J");
    r.reduced_initials = vectors_from_json(j.at("initials_reduced"), d,
                                           "initials_reduced");
    const json& diag = j.at("diagnostics");
    r.diagnostics.dim_N = diag.at("dim_N").get<int>();
    r.diagnostics.dim_R = diag.at("dim_R").get<int>();
    r.diagnostics.dim_RN = diag.at("dim_RN").get<int>();
    r.diagnostics.dim_E = diag.at("dim_E").get<int>();
    r.diagnostics.dim_A = diag.at("dim_A").get<int>();
    r.diagnostics.mode = diag.at("mode").get<std::string>();
    const json& pbar = diag.at("pbar");
    r.diagnostics.pbar.resize(pbar.size());
    for (std::size_t i = 0; i < pbar.size(); ++i) {
        r.diagnostics.pbar(static_cast<int>(i)) = pbar[i].get<double>();
    }
    return r;
}

}  // namespace hmmreduce
