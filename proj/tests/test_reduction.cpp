#include <doctest.h>

#include <random>

#include "hmmreduce/oracle.hpp"
#include "hmmreduce/reduction.hpp"
#include "support.hpp"

using namespace hmmreduce;

TEST_CASE("equilibrium chain collapses to a single state") {
    const auto [h, S] = testsupport::equilibrium3();
    const ReductionResult r = reduce_single_time(h, S);
    REQUIRE(r.reduced.n == 1);
    CHECK(r.reduced.P(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::VectorXd cexp(2);
    cexp << 2.0 / 5, 3.0 / 5;
    CHECK((r.reduced.C - cexp).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(r.reduced_initials.size() == 1);
    CHECK(r.reduced_initials[0](0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.diagnostics.dim_N == 1);
    CHECK(r.diagnostics.dim_R == 1);
    CHECK(r.diagnostics.dim_A == 1);
    CHECK(r.diagnostics.mode == "single");
}

TEST_CASE("uniform 5-state chain: single-time reduction is trivial") {
    const auto [h, S] = testsupport::merged5();
    const ReductionResult r = reduce_single_time(h, S);
    REQUIRE(r.reduced.n == 1);
    Eigen::VectorXd cexp(3);
    cexp << 3.0 / 5, 1.0 / 5, 1.0 / 5;
    CHECK((r.reduced.C - cexp).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(r.diagnostics.dim_R == 1);
    CHECK(r.diagnostics.dim_N == 1);
}

TEST_CASE("uniform 5-state chain: multi-time reduction has three states") {
    const auto [h, S] = testsupport::merged5();
    const ReductionResult r = reduce_multi_time(h, S);
    REQUIRE(r.reduced.n == 3);
    Eigen::MatrixXd Pexp(3, 3), Rexp(3, 5), Jexp(5, 3);
    Pexp << 2.0 / 3, 3.0 / 4, 1.0 / 4,
            1.0 / 6, 0, 1.0 / 2,
            1.0 / 6, 1.0 / 4, 1.0 / 4;
    Rexp << 1, 1, 1, 0, 0,
            0, 0, 0, 1, 0,
            0, 0, 0, 0, 1;
    Jexp << 1.0 / 3, 0, 0,
            1.0 / 3, 0, 0,
            1.0 / 3, 0, 0,
            0, 1, 0,
            0, 0, 1;
    CHECK((r.reduced.P - Pexp).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r.reduced.C - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((r.R - Rexp).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r.J - Jexp).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::VectorXd q(3);
    q << 3.0 / 5, 1.0 / 5, 1.0 / 5;
    CHECK((r.reduced_initials[0] - q).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(r.diagnostics.mode == "multi");
    CHECK(r.diagnostics.dim_RN == 1);
    CHECK(r.diagnostics.dim_E == 3);
}

TEST_CASE("two-start chain with the flat reference vector") {
    const auto [h, S] = testsupport::twostart4();
    StrategySpec strategy;
    strategy.kind = PbarStrategy::Custom;
    strategy.custom = Eigen::VectorXd::Constant(4, 1.0 / 4);
    const ReductionResult r = reduce_single_time(h, S, strategy);
    REQUIRE(r.reduced.n == 3);
    Eigen::MatrixXd Pexp(3, 3), Cexp(2, 3);
    Pexp << 5.0 / 12, 2.0 / 3, 1.0 / 2,
            1.0 / 4, 1.0 / 3, 0,
            1.0 / 3, 0, 1.0 / 2;
    Cexp << 1.0 / 4, 1.0 / 2, 7.0 / 16,
            3.0 / 4, 1.0 / 2, 9.0 / 16;
    CHECK((r.reduced.P - Pexp).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r.reduced.C - Cexp).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(r.reduced_initials.size() == 2);
    Eigen::VectorXd e1 = Eigen::VectorXd::Unit(3, 0);
    CHECK((r.reduced_initials[0] - e1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r.reduced_initials[1] - e1).cwiseAbs().maxCoeff() < 1e-12);
    // The algebra grows past the two-dimensional effective subspace here.
    CHECK(r.diagnostics.dim_E == 2);
    CHECK(r.diagnostics.dim_A == 3);
}

TEST_CASE("single-time reductions preserve the output marginals") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 15; ++trial) {
        const Hmm h = testsupport::random_lumpable_hmm(6, 2, 3, rng);
        const InitialSet S = testsupport::random_initials(6, 1, rng);
        const ReductionResult r = reduce_single_time(h, S);
        for (int t = 0; t <= 10; ++t) {
            const Eigen::VectorXd orig = single_time_marginal(h, S.vectors[0], t);
            const Eigen::VectorXd red =
                single_time_marginal(r.reduced, r.reduced_initials[0], t);
            CHECK((orig - red).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("multi-time reductions preserve sequence probabilities") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        const Hmm h = testsupport::random_lumpable_hmm(6, 2, 3, rng);
        const InitialSet S = testsupport::random_initials(6, 1, rng);
        const ReductionResult r = reduce_multi_time(h, S);
        // All sequences of length up to 4.
        for (int len = 1; len <= 4; ++len) {
            for (int code = 0; code < (1 << len); ++code) {
                std::vector<int> seq(len);
                for (int i = 0; i < len; ++i) seq[i] = (code >> i) & 1;
                const double orig = sequence_probability(h, S.vectors[0], seq);
                const double red = sequence_probability(
                    r.reduced, r.reduced_initials[0], seq);
                CHECK(orig == doctest::Approx(red).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("the multi-time reduction is at least as large as the single-time one") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const Hmm h = testsupport::random_lumpable_hmm(6, 2, 2, rng);
        const InitialSet S = testsupport::random_initials(6, 1, rng);
        const ReductionResult rs = reduce_single_time(h, S);
        const ReductionResult rm = reduce_multi_time(h, S);
        CHECK(rs.reduced.n <= rm.reduced.n);
    }
}

TEST_CASE("reduced models are valid HMMs with consistent factors") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        const Hmm h = testsupport::random_hmm(5, 2, rng);
        const InitialSet S = testsupport::random_initials(5, 2, rng);
        for (const bool multi : {false, true}) {
            const ReductionResult r = multi ? reduce_multi_time(h, S)
                                            : reduce_single_time(h, S);
            const int d = r.reduced.n;
            for (int j = 0; j < d; ++j) {
                CHECK(r.reduced.P.col(j).sum() ==
                      doctest::Approx(1.0).epsilon(1e-12));
                CHECK(r.reduced.P.col(j).minCoeff() >= 0.0);
                CHECK(r.reduced.C.col(j).sum() ==
                      doctest::Approx(1.0).epsilon(1e-12));
            }
            CHECK((r.R * r.J - Eigen::MatrixXd::Identity(d, d))
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
            for (const auto& q : r.reduced_initials) {
                CHECK(q.sum() == doctest::Approx(1.0).epsilon(1e-10));
                CHECK(q.minCoeff() >= 0.0);
            }
        }
    }
}

TEST_CASE("reducing an already reduced model changes nothing") {
    const auto [h, S] = testsupport::merged5();
    const ReductionResult first = reduce_multi_time(h, S);
    const InitialSet S2{first.reduced_initials};
    const ReductionResult second = reduce_multi_time(first.reduced, S2);
    CHECK(second.reduced.n == first.reduced.n);
    CHECK((second.reduced.P - first.reduced.P).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("propagation check residuals") {
    const auto [h, S] = testsupport::merged5();
    const ReductionResult rm = reduce_multi_time(h, S);
    const PropagationCheck pc = reduced_propagation_check(rm, h, S);
    CHECK(pc.switching_residual < 1e-10);
    CHECK(pc.invariance_residual < 1e-10);

    // The single-time reduction of the equilibrium chain keeps only span{1},
    // which the emission conditioners do not preserve.
    const auto [h3, S3] = testsupport::equilibrium3();
    const ReductionResult rs = reduce_single_time(h3, S3);
    const PropagationCheck pc3 = reduced_propagation_check(rs, h3, S3);
    CHECK(pc3.invariance_residual > 1e-3);
}
