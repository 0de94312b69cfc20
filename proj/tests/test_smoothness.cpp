#include <gtest/gtest.h>

#include <Eigen/Core>

#include "hsls/rng.hpp"
#include "hsls/smoothness.hpp"
#include "oracles.hpp"

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

TEST(TvKind, NamesRoundTrip) {
    for (TvKind kind : kAllTvKinds) {
        EXPECT_EQ(TvKind::parse(kind.name()), kind);
    }
    EXPECT_THROW(TvKind::parse("avg-square"), InvalidSpecError);
}

TEST(SignalMatrix, ValidatesShapeAndFiniteness) {
    EXPECT_THROW(SignalMatrix(Eigen::MatrixXd::Zero(1, 3)), InvalidSpecError);
    EXPECT_THROW(SignalMatrix(Eigen::MatrixXd::Zero(3, 0)), InvalidSpecError);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW((SignalMatrix(bad)), InvalidSpecError);
}

TEST(PairDistance, IdenticalRowsAreZero) {
    Eigen::VectorXd x(3);
    x << 1.0, -2.0, 0.5;
    EXPECT_DOUBLE_EQ(pair_distance(x, x, PairMeasure::SquaredEuclidean), 0.0);
    EXPECT_DOUBLE_EQ(pair_distance(x, x, PairMeasure::L1), 0.0);
}

TEST(PairDistance, ElementwiseExamples) {
    Eigen::Vector2d xi(0.0, 0.0);
    Eigen::Vector2d xj(1.0, 2.0);
    EXPECT_DOUBLE_EQ(pair_distance(xi, xj, PairMeasure::SquaredEuclidean), 5.0);
    EXPECT_DOUBLE_EQ(pair_distance(xi, xj, PairMeasure::L1), 3.0);
}

TEST(PairDistance, RejectsLengthMismatch) {
    EXPECT_THROW(pair_distance(Eigen::Vector2d(0, 0), Eigen::Vector3d(0, 0, 0),
                               PairMeasure::L1),
                 DimensionError);
}

TEST(DistanceVector, ThreeNodeLine) {
    Eigen::MatrixXd data(3, 1);
    data << 0.0, 1.0, 2.0;
    const SignalMatrix X(data);
    const CandidateSet cands(3, {Hyperedge({0, 1, 2})});

    EXPECT_DOUBLE_EQ(distance_vector(X, cands, TvKind::sum_square())[0], 6.0);
    EXPECT_DOUBLE_EQ(distance_vector(X, cands, TvKind::sum_absolute())[0], 4.0);
    EXPECT_DOUBLE_EQ(distance_vector(X, cands, TvKind::max_absolute())[0], 2.0);
    EXPECT_DOUBLE_EQ(distance_vector(X, cands, TvKind::max_square())[0], 4.0);
}

TEST(DistanceVector, EqualMemberRowsGiveZero) {
    Eigen::MatrixXd data(4, 2);
    data << 1.0, 2.0, 1.0, 2.0, 1.0, 2.0, 9.0, 9.0;
    const SignalMatrix X(data);
    const CandidateSet cands(4, {Hyperedge({0, 1, 2})});
    for (TvKind kind : kAllTvKinds) {
        EXPECT_DOUBLE_EQ(distance_vector(X, cands, kind)[0], 0.0);
    }
}

TEST(DistanceVector, PairsCollapseAggregators) {
    Rng rng(3);
    const SignalMatrix X = random_signals(rng, 5, 4);
    const CandidateSet cands(5, {Hyperedge({1, 3})});
    EXPECT_EQ(distance_vector(X, cands, TvKind::sum_square())[0],
              distance_vector(X, cands, TvKind::max_square())[0]);
    EXPECT_EQ(distance_vector(X, cands, TvKind::sum_absolute())[0],
              distance_vector(X, cands, TvKind::max_absolute())[0]);
}

TEST(DistanceVector, RejectsNodeCountMismatch) {
    Rng rng(4);
    const SignalMatrix X = random_signals(rng, 4, 2);
    const CandidateSet cands(5, {Hyperedge({0, 4})});
    EXPECT_THROW(distance_vector(X, cands, TvKind::sum_square()), DimensionError);
}

TEST(DistanceVector, MatchesBruteForceDoubleLoop) {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(5));  // N <= 8
        const SignalMatrix X = random_signals(rng, n, 3 + static_cast<int>(rng.below(4)));
        const CandidateSet cands = enumerate_full_candidates(n, CardinalitySpec({2, 3}));

        for (TvKind kind : kAllTvKinds) {
            const DistanceVector z = distance_vector(X, cands, kind);
            for (std::size_t d = 0; d < cands.size(); ++d) {
                const double expected = oracle::pairwise_cost(
                    X.data(), cands[d].nodes(), kind.aggregator == Aggregator::Max,
                    kind.pair_measure == PairMeasure::SquaredEuclidean);
                if (kind.pair_measure == PairMeasure::L1) {
                    EXPECT_EQ(z[static_cast<Eigen::Index>(d)], expected);
                } else {
                    EXPECT_NEAR(z[static_cast<Eigen::Index>(d)], expected,
                                1e-12 * std::max(1.0, std::abs(expected)));
                }
            }
        }
    }
}

TEST(DistanceVector, MaxNeverExceedsSum) {
    Rng rng(29);
    const SignalMatrix X = random_signals(rng, 7, 5);
    const CandidateSet cands = enumerate_full_candidates(7, CardinalitySpec({2, 3, 4}));
    for (PairMeasure measure : {PairMeasure::SquaredEuclidean, PairMeasure::L1}) {
        const DistanceVector z_sum = distance_vector(X, cands, {Aggregator::Sum, measure});
        const DistanceVector z_max = distance_vector(X, cands, {Aggregator::Max, measure});
        for (Eigen::Index d = 0; d < z_sum.size(); ++d) {
            EXPECT_LE(z_max[d], z_sum[d]);
        }
    }
}

TEST(DistanceVector, MaxKindsMonotoneUnderInclusion) {
    Rng rng(31);
    const SignalMatrix X = random_signals(rng, 8, 4);
    const CandidateSet cands = enumerate_full_candidates(8, CardinalitySpec({2, 3, 4}));
    for (TvKind kind : {TvKind::max_absolute(), TvKind::max_square()}) {
        const DistanceVector z = distance_vector(X, cands, kind);
        for (std::size_t i = 0; i < cands.size(); ++i) {
            for (std::size_t j = 0; j < cands.size(); ++j) {
                if (i != j && cands[i].subset_of(cands[j])) {
                    EXPECT_LE(z[static_cast<Eigen::Index>(i)], z[static_cast<Eigen::Index>(j)]);
                }
            }
        }
    }
}

TEST(DistanceVector, InvariantToColumnPermutationAndConstantShift) {
    Rng rng(37);
    const int n = 6;
    const int p = 5;
    const SignalMatrix X = random_signals(rng, n, p);
    const CandidateSet cands = enumerate_full_candidates(n, CardinalitySpec({2, 3}));

    Eigen::MatrixXd permuted(n, p);
    const std::vector<int> perm{3, 0, 4, 1, 2};
    for (int j = 0; j < p; ++j) permuted.col(j) = X.data().col(perm[static_cast<std::size_t>(j)]);
    const SignalMatrix X_perm(permuted);
    const SignalMatrix X_shift(X.data().array() + 7.25);

    for (TvKind kind : kAllTvKinds) {
        const DistanceVector z = distance_vector(X, cands, kind);
        const DistanceVector z_perm = distance_vector(X_perm, cands, kind);
        const DistanceVector z_shift = distance_vector(X_shift, cands, kind);
        for (Eigen::Index d = 0; d < z.size(); ++d) {
            EXPECT_NEAR(z_perm[d], z[d], 1e-12 * std::max(1.0, std::abs(z[d])));
            EXPECT_NEAR(z_shift[d], z[d], 1e-12 * std::max(1.0, std::abs(z[d])));
        }
    }
}

TEST(TotalVariation, EmptyEdgeSetIsZero) {
    Rng rng(41);
    const SignalMatrix X = random_signals(rng, 4, 3);
    EXPECT_DOUBLE_EQ(total_variation(Hypergraph(4), X, TvKind::sum_square()), 0.0);
}

TEST(TotalVariation, UnitWeightsSumTheDistances) {
    Rng rng(43);
    const SignalMatrix X = random_signals(rng, 5, 3);
    const Hypergraph h(5, {Hyperedge({0, 1}), Hyperedge({2, 3, 4})});
    const double expected = hyperedge_distance(X, h.edges()[0], TvKind::max_square()) +
                            hyperedge_distance(X, h.edges()[1], TvKind::max_square());
    EXPECT_DOUBLE_EQ(total_variation(h, X, TvKind::max_square()), expected);
}

TEST(TotalVariation, LinearInWeights) {
    Rng rng(47);
    const SignalMatrix X = random_signals(rng, 5, 3);
    const std::vector<Hyperedge> edges{Hyperedge({0, 1}), Hyperedge({1, 2, 3})};
    const Hypergraph h(5, edges, std::vector<double>{0.4, 1.3});
    const Hypergraph h2(5, edges, std::vector<double>{0.8, 2.6});
    EXPECT_DOUBLE_EQ(total_variation(h2, X, TvKind::sum_absolute()),
                     2.0 * total_variation(h, X, TvKind::sum_absolute()));
}
