#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "hmmreduce/oracle.hpp"
#include "hmmreduce/reduction.hpp"

namespace {

using namespace hmmreduce;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitBudget = 4;
constexpr int kExitCounterexample = 5;

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(12);
    out << x;
    return out.str();
}

std::string fmt(const Eigen::VectorXd& v) {
    std::string s = "(";
    for (int i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt(v(i));
    }
    return s + ")";
}

Eigen::VectorXd load_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!j.is_array()) throw ParseError(path + ": expected a JSON array");
    Eigen::VectorXd v(static_cast<int>(j.size()));
    for (int i = 0; i < v.size(); ++i) {
        if (!j[i].is_number()) throw ParseError(path + ": non-numeric entry");
        v(i) = j[i].get<double>();
    }
    return v;
}

StrategySpec make_strategy(const std::string& name,
                           const std::string& custom_path) {
    StrategySpec spec;
    if (name == "corollary-mean") {
        spec.kind = PbarStrategy::CorollaryMean;
    } else if (name == "uniform") {
        spec.kind = PbarStrategy::Uniform;
    } else if (name == "custom") {
        if (custom_path.empty()) {
            throw ParseError("--strategy custom requires --custom-p");
        }
        spec.kind = PbarStrategy::Custom;
        spec.custom = load_vector(custom_path);
    } else {
        throw ParseError("unknown strategy '" + name + "'");
    }
    return spec;
}

int cmd_reduce(const std::string& input, const std::string& output,
               const std::string& mode, const std::string& strategy_name,
               const std::string& custom_path, double tol_rank) {
    StrategySpec strategy;
    Hmm h;
    InitialSet S;
    try {
        strategy = make_strategy(strategy_name, custom_path);
        std::tie(h, S) = load_model(input);
    } catch (const Error& e) {
        std::cerr << "reduce: input stage: " << e.what() << "\n";
        return kExitInput;
    }
    ReductionResult result;
    try {
        result = mode == "multi" ? reduce_multi_time(h, S, strategy, tol_rank)
                                 : reduce_single_time(h, S, strategy, tol_rank);
    } catch (const Error& e) {
        std::cerr << "reduce: pipeline stage: " << e.what() << "\n";
        return kExitDegenerate;
    }
    try {
        save_result(output, result);
    } catch (const Error& e) {
        std::cerr << "reduce: output stage: " << e.what() << "\n";
        return kExitInput;
    }
    const Diagnostics& d = result.diagnostics;
    std::cout << "mode: " << d.mode << "\n"
              << "strategy: " << strategy_name << "\n"
              << "original states n = " << h.n << "\n"
              << "reduced states d = " << result.reduced.n << "\n"
              << "dim nonobservable = " << d.dim_N << "\n"
              << "dim reachable = " << d.dim_R << "\n"
              << "dim intersection = " << d.dim_RN << "\n"
              << "dim effective = " << d.dim_E << "\n"
              << "dim algebra = " << d.dim_A << "\n"
              << "reference vector = " << fmt(d.pbar) << "\n"
              << "result written to " << output << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& original, const std::string& reduced,
               int horizon, double tol_verify, std::int64_t cap) {
    Hmm h;
    InitialSet S;
    ReductionResult result;
    try {
        std::tie(h, S) = load_model(original);
        result = load_result(reduced);
    } catch (const Error& e) {
        std::cerr << "verify: input stage: " << e.what() << "\n";
        return kExitInput;
    }
    EquivalenceReport report;
    try {
        report = verify_equivalence(h, result, S, horizon, tol_verify, cap);
    } catch (const EnumerationCapExceeded& e) {
        std::cerr << "verify: " << e.what()
                  << " (lower --horizon or raise --cap)\n";
        return kExitBudget;
    } catch (const Error& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return kExitInput;
    }
    std::cout << "mode: " << report.mode << "\n"
              << "horizon: " << report.horizon << "\n"
              << "sequences checked: " << report.sequences_checked << "\n"
              << "max abs error: " << fmt(report.max_abs_error) << "\n";
    if (!report.worst_case.empty()) {
        std::cout << "worst case: " << report.worst_case << "\n";
    }
    std::cout << "verdict: " << (report.passed ? "PASS" : "FAIL")
              << " (tolerance " << fmt(tol_verify) << ")\n";
    return report.passed ? kExitOk : kExitVerifyFailed;
}

int cmd_spaces(const std::string& input, double tol_rank) {
    Hmm h;
    InitialSet S;
    try {
        std::tie(h, S) = load_model(input);
    } catch (const Error& e) {
        std::cerr << "spaces: " << e.what() << "\n";
        return kExitInput;
    }
    const Subspace N = nonobservable(h, tol_rank);
    const ReachableSpace R = reachable(h, S, tol_rank);
    const EffectiveSpace E = effective_orthogonal(R, N);
    const Subspace NC = conditioned_nonobservable(h, tol_rank);
    const ReachableSpace RC = conditioned_reachable(h, S, tol_rank);
    const EffectiveSpace EC = effective_orthogonal(RC, NC);
    const bool nc_in_n = NC.dim() == 0 || contains(N, NC.basis);
    const bool r_in_rc = R.space.dim() == 0 || contains(RC.space, R.space.basis);
    std::cout << "states n = " << h.n << ", symbols m = " << h.m
              << ", initials = " << S.vectors.size() << "\n"
              << "dim nonobservable = " << N.dim() << "\n"
              << "dim reachable = " << R.space.dim() << "\n"
              << "dim intersection = " << E.intersection.dim() << "\n"
              << "dim effective = " << E.space.dim() << "\n"
              << "dim conditioned nonobservable = " << NC.dim() << "\n"
              << "dim conditioned reachable = " << RC.space.dim() << "\n"
              << "dim conditioned effective = " << EC.space.dim() << "\n"
              << "conditioned nonobservable inside nonobservable: "
              << (nc_in_n ? "yes" : "no") << "\n"
              << "reachable inside conditioned reachable: "
              << (r_in_rc ? "yes" : "no") << "\n";
    return kExitOk;
}

int cmd_probe(const std::string& input, const std::string& output, int trials,
              std::uint64_t seed, double tol_rank) {
    Hmm h;
    InitialSet S;
    try {
        std::tie(h, S) = load_model(input);
    } catch (const Error& e) {
        std::cerr << "probe: " << e.what() << "\n";
        return kExitInput;
    }
    const ConjectureProbe probe = probe_conjecture(h, S, trials, seed, tol_rank);
    std::cout << "seed: " << probe.seed << "\n"
              << "trials: " << probe.trials << "\n"
              << "default algebra dim: " << probe.default_dim << "\n";
    if (!probe.freedom) {
        std::cout << "no freedom in the effective subspace; "
                  << "the default choice is optimal\n";
        return kExitOk;
    }
    std::cout << "min alternative dim: " << probe.min_alternative << "\n"
              << "median alternative dim: " << probe.median_alternative << "\n";
    if (!probe.counterexample_dim) {
        std::cout << "no alternative beat the default\n";
        return kExitOk;
    }
    std::cout << "counterexample: dim " << *probe.counterexample_dim
              << " at trial " << *probe.counterexample_trial << "\n";
    if (!output.empty()) {
        nlohmann::json j;
        j["seed"] = probe.seed;
        j["trial"] = *probe.counterexample_trial;
        j["default_dim"] = probe.default_dim;
        j["counterexample_dim"] = *probe.counterexample_dim;
        j["model_file"] = input;
        std::ofstream out(output);
        out << j.dump(2) << "\n";
        std::cout << "counterexample written to " << output << "\n";
    }
    return kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact reduction of hidden Markov models"};
    app.require_subcommand(1);

    std::string input, output = "result.json", mode = "single";
    std::string strategy = "corollary-mean", custom_path;
    std::string original, reduced, probe_output;
    double tol_rank = kDefaultRankTol;
    double tol_verify = 1e-9;
    int horizon = 5;
    int trials = 1000;
    std::uint64_t seed = 0;
    std::int64_t cap = kDefaultEnumerationCap;

    auto* reduce = app.add_subcommand(
        "reduce", "Reduce a model and write the projection result");
    reduce->add_option("--input", input, "model file")->required();
    reduce->add_option("--output", output, "result file");
    reduce->add_option("--mode", mode, "single or multi")
        ->check(CLI::IsMember({"single", "multi"}));
    reduce->add_option("--strategy", strategy,
                       "corollary-mean, uniform or custom");
    reduce->add_option("--custom-p", custom_path,
                       "JSON array with the custom reference vector");
    reduce->add_option("--tol-rank", tol_rank, "rank tolerance");

    auto* verify = app.add_subcommand(
        "verify", "Check a reduction against the original model");
    verify->add_option("--original", original, "model file")->required();
    verify->add_option("--reduced", reduced, "result file")->required();
    verify->add_option("--horizon", horizon, "time horizon")
        ->check(CLI::PositiveNumber);
    verify->add_option("--tol-verify", tol_verify, "comparison tolerance");
    verify->add_option("--cap", cap, "sequence enumeration cap");

    auto* spaces =
        app.add_subcommand("spaces", "Print the subspace diagnostics");
    spaces->add_option("--input", input, "model file")->required();
    spaces->add_option("--tol-rank", tol_rank, "rank tolerance");

    auto* probe = app.add_subcommand(
        "probe", "Sample alternative effective subspaces");
    probe->add_option("--input", input, "model file")->required();
    probe->add_option("--output", probe_output, "counterexample file");
    probe->add_option("--trials", trials, "number of sampled alternatives")
        ->check(CLI::PositiveNumber);
    probe->add_option("--seed", seed, "random seed");
    probe->add_option("--tol-rank", tol_rank, "rank tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (reduce->parsed()) {
            return cmd_reduce(input, output, mode, strategy, custom_path,
                              tol_rank);
        }
        if (verify->parsed()) {
            return cmd_verify(original, reduced, horizon, tol_verify, cap);
        }
        if (spaces->parsed()) return cmd_spaces(input, tol_rank);
        if (probe->parsed()) {
            return cmd_probe(input, probe_output, trials, seed, tol_rank);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
