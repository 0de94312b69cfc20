#include <gtest/gtest.h>

#include <filesystem>

#include <Eigen/Core>

#include "hsls/eval.hpp"
#include "hsls/io.hpp"
#include "hsls/rng.hpp"
#include "hsls/synth.hpp"

using namespace hsls;

namespace {

struct Scenario {
    Hypergraph truth;
    SignalMatrix signals;
    CandidateSet candidates;
};

Scenario make_scenario(std::uint64_t seed) {
    const int n = 10;
    Hypergraph truth = random_hypergraph(n, CardinalitySpec({3}), 5, seed);
    SignalMatrix X = sample_smooth_signals(star_laplacian(truth), 120, seed + 1);
    CandidateSet cands = reduce_candidates(X, CardinalitySpec({3}, std::vector<int>{4}));
    return {std::move(truth), std::move(X), std::move(cands)};
}

GridSpec small_grid() {
    GridSpec grid;
    grid.alpha_grid = {0.1, 1.0, 10.0};
    grid.beta_grid = {0.1, 1.0};
    grid.tv_kind = TvKind::max_square();
    grid.selection = SelectionRule::top_k(5);
    return grid;
}

HslsParams fast_params() {
    HslsParams p;
    p.eta = 1e-10;
    p.i_max = 5000;
    return p;
}

}  // namespace

TEST(GridSearch, SingleCellReducesToOneSolve) {
    const Scenario sc = make_scenario(3);
    GridSpec grid = small_grid();
    grid.alpha_grid = {1.0};
    grid.beta_grid = {0.5};
    const GridSearchResult result =
        grid_search(sc.signals, sc.candidates, grid, fast_params(), &sc.truth);
    ASSERT_EQ(result.table.size(), 1u);
    EXPECT_EQ(result.best.alpha, 1.0);
    EXPECT_EQ(result.best.beta, 0.5);
    EXPECT_EQ(result.best.f1, result.table[0].f1);
    EXPECT_EQ(result.best.edge_count, 5u);
}

TEST(GridSearch, BestCellDominatesTheTable) {
    const Scenario sc = make_scenario(5);
    const GridSearchResult result =
        grid_search(sc.signals, sc.candidates, small_grid(), fast_params(), &sc.truth);
    ASSERT_EQ(result.table.size(), 6u);
    for (const auto& cell : result.table) {
        EXPECT_LE(cell.f1, result.best.f1);
        EXPECT_TRUE(cell.has_truth_metrics);
    }
}

TEST(GridSearch, WithoutTruthMinimizesTotalVariation) {
    const Scenario sc = make_scenario(7);
    const GridSearchResult result =
        grid_search(sc.signals, sc.candidates, small_grid(), fast_params());
    const auto k = static_cast<std::size_t>(TvKind::max_square().index());
    for (const auto& cell : result.table) {
        EXPECT_GE(cell.tv_by_kind[k], result.best.tv_by_kind[k]);
        EXPECT_FALSE(cell.has_truth_metrics);
    }
}

TEST(GridSearch, IdenticalCellsProduceIdenticalReports) {
    const Scenario sc = make_scenario(9);
    GridSpec grid = small_grid();
    grid.alpha_grid = {2.0, 2.0};
    grid.beta_grid = {0.7};
    const GridSearchResult result =
        grid_search(sc.signals, sc.candidates, grid, fast_params(), &sc.truth);
    ASSERT_EQ(result.table.size(), 2u);
    EXPECT_EQ(result.table[0].f1, result.table[1].f1);
    EXPECT_EQ(result.table[0].iterations, result.table[1].iterations);
    EXPECT_EQ(result.table[0].tv_by_kind, result.table[1].tv_by_kind);
    EXPECT_EQ(result.table[0].edge_count, result.table[1].edge_count);
}

TEST(GridSearch, F1ConsistentWithPrecisionRecall) {
    const Scenario sc = make_scenario(11);
    const GridSearchResult result =
        grid_search(sc.signals, sc.candidates, small_grid(), fast_params(), &sc.truth);
    for (const auto& cell : result.table) {
        const double denom = cell.precision + cell.recall;
        const double expected = denom > 0.0 ? 2.0 * cell.precision * cell.recall / denom : 0.0;
        EXPECT_NEAR(cell.f1, expected, 1e-12);
    }
}

TEST(TvComparison, EqualStructuresGiveEqualCells) {
    const Scenario sc = make_scenario(13);
    const auto rows = tv_comparison(sc.truth, sc.truth,
                                    {{"signals", sc.signals}}, TvKind::sum_square());
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].total_variation, rows[1].total_variation);
    EXPECT_EQ(rows[0].edge_count, rows[1].edge_count);
}

TEST(TvComparison, CellsEqualTotalVariationExactly) {
    const Scenario sc = make_scenario(15);
    const Hypergraph other = random_hypergraph(10, CardinalitySpec({3}), 5, 99);
    for (TvKind kind : kAllTvKinds) {
        const auto rows = tv_comparison(sc.truth, other, {{"signals", sc.signals}}, kind);
        EXPECT_EQ(rows[0].total_variation,
                  total_variation(sc.truth.unweighted(), sc.signals, kind));
        EXPECT_EQ(rows[1].total_variation,
                  total_variation(other.unweighted(), sc.signals, kind));
    }
}

TEST(TvComparison, ZeroCostHyperedgeLeavesTvUnchanged) {
    Eigen::MatrixXd data(4, 2);
    data << 1.0, 2.0, 1.0, 2.0, 5.0, 6.0, 9.0, 3.0;
    const SignalMatrix X(data);
    const Hypergraph base(4, {Hyperedge({2, 3})});
    // nodes 0 and 1 have identical rows, so {0,1} costs zero
    const Hypergraph extended(4, {Hyperedge({2, 3}), Hyperedge({0, 1})});
    for (TvKind kind : kAllTvKinds) {
        const auto rows = tv_comparison(base, extended, {{"x", X}}, kind);
        EXPECT_EQ(rows[0].total_variation, rows[1].total_variation);
    }
}

TEST(TvComparison, RejectsMismatchedNodeCounts) {
    const Scenario sc = make_scenario(17);
    const Hypergraph other(11, {Hyperedge({0, 1, 2})});
    EXPECT_THROW(
        tv_comparison(sc.truth, other, {{"signals", sc.signals}}, TvKind::sum_square()),
        DimensionError);
}

TEST(CompareMethods, RunsEveryMethodOnTheSameSignals) {
    const Scenario sc = make_scenario(19);
    const std::vector<MethodSpec> methods = {MethodSpec::hsls(TvKind::max_square()),
                                             MethodSpec::hgsi(), MethodSpec::knn_direct()};
    GridSpec grid = small_grid();
    const auto reports = compare_methods(sc.signals, sc.truth,
                                         CardinalitySpec({3}, std::vector<int>{4}), methods,
                                         grid, fast_params());
    ASSERT_EQ(reports.size(), 3u);
    EXPECT_EQ(reports[0].method, "hsls:max-square");
    EXPECT_EQ(reports[1].method, "hgsi");
    EXPECT_EQ(reports[2].method, "knn");
    for (const auto& r : reports) {
        EXPECT_TRUE(r.has_truth_metrics);
        EXPECT_GT(r.edge_count, 0u);
        EXPECT_TRUE(r.learned.has_value());
    }
    // equal footing: solver and closed-form baselines select |truth| edges
    EXPECT_EQ(reports[0].edge_count, sc.truth.num_edges());
    EXPECT_EQ(reports[1].edge_count, sc.truth.num_edges());
}

TEST(CompareMethods, MethodSpecParsing) {
    EXPECT_EQ(MethodSpec::parse("hsls:sum-abs").name(), "hsls:sum-abs");
    EXPECT_EQ(MethodSpec::parse("hgsi").name(), "hgsi");
    EXPECT_EQ(MethodSpec::parse("knn").name(), "knn");
    EXPECT_THROW(MethodSpec::parse("pdl"), InvalidSpecError);
}

TEST(Reports, CsvRoundTripIsLossless) {
    const Scenario sc = make_scenario(23);
    const GridSearchResult result =
        grid_search(sc.signals, sc.candidates, small_grid(), fast_params(), &sc.truth);

    const auto path = std::filesystem::temp_directory_path() / "hsls_reports_test.csv";
    io::write_reports_csv(path, result.table);
    const auto parsed = io::read_reports_csv(path);
    ASSERT_EQ(parsed.size(), result.table.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        EXPECT_EQ(parsed[i].method, result.table[i].method);
        EXPECT_EQ(parsed[i].tv_kind, result.table[i].tv_kind);
        EXPECT_EQ(parsed[i].alpha, result.table[i].alpha);
        EXPECT_EQ(parsed[i].beta, result.table[i].beta);
        EXPECT_EQ(parsed[i].precision, result.table[i].precision);
        EXPECT_EQ(parsed[i].recall, result.table[i].recall);
        EXPECT_EQ(parsed[i].f1, result.table[i].f1);
        EXPECT_EQ(parsed[i].tv_by_kind, result.table[i].tv_by_kind);
        EXPECT_EQ(parsed[i].edge_count, result.table[i].edge_count);
        EXPECT_EQ(parsed[i].wall_seconds, result.table[i].wall_seconds);
        EXPECT_EQ(parsed[i].iterations, result.table[i].iterations);
        EXPECT_EQ(parsed[i].converged, result.table[i].converged);
        EXPECT_EQ(parsed[i].diverged, result.table[i].diverged);
        EXPECT_EQ(parsed[i].notes, result.table[i].notes);
    }
    std::filesystem::remove(path);
}
