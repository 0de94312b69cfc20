#include <gtest/gtest.h>

#include <Eigen/Core>

#include "hsls/baselines.hpp"
#include "hsls/rng.hpp"

using namespace hsls;

namespace {

SignalMatrix random_signals(Rng& rng, int n, int p) {
    Eigen::MatrixXd data(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) data(i, j) = rng.uniform(-2.0, 2.0);
    }
    return SignalMatrix(std::move(data));
}

}  // namespace

TEST(HgsiSolve, ClosedFormValues) {
    Eigen::VectorXd z(3);
    z << 0.0, 1.0, 1e9;
    const Eigen::VectorXd w = hgsi_solve(z);
    EXPECT_DOUBLE_EQ(w[0], 1.0);
    EXPECT_DOUBLE_EQ(w[1], 0.5);
    EXPECT_GT(w[2], 0.0);
    EXPECT_LT(w[2], 1e-8);
}

TEST(HgsiSolve, OutputsInUnitInterval) {
    Rng rng(83);
    Eigen::VectorXd z(50);
    for (int i = 0; i < 50; ++i) z[i] = rng.uniform(0.0, 100.0);
    const Eigen::VectorXd w = hgsi_solve(z);
    EXPECT_GT(w.minCoeff(), 0.0);
    EXPECT_LE(w.maxCoeff(), 1.0);
}

TEST(HgsiSolve, StrictlyDecreasingInDistance) {
    Eigen::VectorXd z(2);
    z << 0.4, 0.4000001;
    const Eigen::VectorXd w = hgsi_solve(z);
    EXPECT_GT(w[0], w[1]);
    EXPECT_THROW(hgsi_solve(Eigen::VectorXd::Constant(1, -0.1)), InvalidSpecError);
}

TEST(HgsiSolve, SubsetMonotonicityUnderMaxSquare) {
    // On a full enumeration with max-square costs, a superset hyperedge never
    // gets a larger closed-form weight than any of its subsets.
    Rng rng(89);
    const int n = 7;
    const SignalMatrix X = random_signals(rng, n, 4);
    const CandidateSet cands = enumerate_full_candidates(n, CardinalitySpec({2, 3}));
    const Eigen::VectorXd w = hgsi_solve(distance_vector(X, cands, TvKind::max_square()));
    for (std::size_t i = 0; i < cands.size(); ++i) {
        for (std::size_t j = 0; j < cands.size(); ++j) {
            if (i != j && cands[i].subset_of(cands[j])) {
                EXPECT_LE(w[static_cast<Eigen::Index>(j)], w[static_cast<Eigen::Index>(i)]);
            }
        }
    }
}

TEST(HgsiPipeline, CandidateCountStaysUnderNL) {
    Rng rng(97);
    const int n = 10;
    const SignalMatrix X = random_signals(rng, n, 3);
    const CardinalitySpec spec({2, 3});
    const CandidateSet cands = reduce_candidates(X, spec.with_minimal_neighbors());
    EXPECT_LE(cands.size(), static_cast<std::size_t>(n) * spec.size());

    const Hypergraph learned = hgsi_pipeline(X, spec);
    EXPECT_LE(learned.num_edges(), static_cast<std::size_t>(n) * spec.size());
}

TEST(HgsiPipeline, IdenticalRowsGiveUnitWeights) {
    Eigen::MatrixXd data(4, 3);
    for (int i = 0; i < 4; ++i) {
        data(i, 0) = 1.0;
        data(i, 1) = 2.0;
        data(i, 2) = 3.0;
    }
    const SignalMatrix X(data);
    const Hypergraph learned = hgsi_pipeline(X, CardinalitySpec({2}));
    ASSERT_GT(learned.num_edges(), 0u);
    for (std::size_t d = 0; d < learned.num_edges(); ++d) {
        EXPECT_DOUBLE_EQ(learned.weight(d), 1.0);
    }
}

TEST(KnnStructure, PairsOfNearestRows) {
    Eigen::MatrixXd data(4, 1);
    data << 0.0, 1.0, 10.0, 11.0;
    const SignalMatrix X(data);
    const Hypergraph h = knn_structure(X, CardinalitySpec({2}));
    ASSERT_EQ(h.num_edges(), 2u);
    EXPECT_EQ(h.edges()[0], Hyperedge({0, 1}));
    EXPECT_EQ(h.edges()[1], Hyperedge({2, 3}));
    EXPECT_FALSE(h.has_weights());
}

TEST(KnnStructure, CardinalitiesMatchSchedule) {
    Rng rng(101);
    const int n = 9;
    const SignalMatrix X = random_signals(rng, n, 3);
    const CardinalitySpec spec({2, 4});
    const Hypergraph h = knn_structure(X, spec);
    EXPECT_LE(h.num_edges(), static_cast<std::size_t>(n) * spec.size());
    for (const auto& e : h.edges()) {
        EXPECT_TRUE(e.cardinality() == 2 || e.cardinality() == 4);
    }
}

TEST(KnnStructure, ContainedInMinimalReduction) {
    Rng rng(103);
    const int n = 8;
    const SignalMatrix X = random_signals(rng, n, 3);
    const CardinalitySpec spec({2, 3});
    const Hypergraph h = knn_structure(X, spec);
    const CandidateSet cands = reduce_candidates(X, spec.with_minimal_neighbors());
    for (const auto& e : h.edges()) {
        EXPECT_TRUE(cands.contains(e));
    }
}
