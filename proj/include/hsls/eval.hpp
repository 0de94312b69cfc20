#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsls/baselines.hpp"
#include "hsls/hypergraph.hpp"
#include "hsls/parallel.hpp"
#include "hsls/reduction.hpp"
#include "hsls/smoothness.hpp"
#include "hsls/solver.hpp"

namespace hsls {

/// Log-spaced grid over the (alpha, beta) plane plus the smoothness kind and
/// selection rule shared by every cell.
struct GridSpec {
    std::vector<double> alpha_grid;
    std::vector<double> beta_grid;
    TvKind tv_kind = TvKind::max_square();
    SelectionRule selection = SelectionRule::relative(0.5);

    static std::vector<double> decades() {
        return {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
    }

    static GridSpec defaults() {
        GridSpec g;
        g.alpha_grid = decades();
        g.beta_grid = decades();
        return g;
    }

    void validate() const {
        if (alpha_grid.empty() || beta_grid.empty()) {
            throw InvalidSpecError("grid search needs nonempty alpha and beta grids");
        }
        for (double a : alpha_grid) {
            if (!(a > 0.0)) throw InvalidSpecError("alpha grid values must be > 0");
        }
        for (double b : beta_grid) {
            if (!(b > 0.0)) throw InvalidSpecError("beta grid values must be > 0");
        }
    }
};

/// One learning run: method, parameters, recovery metrics when the truth is
/// known, and the total variation of the learned structure under all four
/// smoothness kinds. Divergent solver cells keep zeroed metrics and set the
/// diverged flag.
struct RunReport {
    std::string method;
    TvKind tv_kind = TvKind::max_square();
    double alpha = 0.0;
    double beta = 0.0;
    bool has_truth_metrics = false;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::array<double, 4> tv_by_kind{};  // indexed by TvKind::index()
    std::size_t edge_count = 0;
    double wall_seconds = 0.0;
    int iterations = 0;
    bool converged = false;
    bool diverged = false;
    std::string notes;
    std::optional<Hypergraph> learned;  // not serialized; written as a structure file
};

namespace detail {

inline void fill_structure_fields(RunReport& report, const Hypergraph& learned,
                                  const SignalMatrix& X, const Hypergraph* truth) {
    report.learned = learned;
    report.edge_count = learned.num_edges();
    const Hypergraph structure = learned.unweighted();
    for (TvKind kind : kAllTvKinds) {
        report.tv_by_kind[static_cast<std::size_t>(kind.index())] =
            total_variation(structure, X, kind);
    }
    if (truth != nullptr) {
        const SetMetrics m = set_metrics(learned, *truth);
        report.has_truth_metrics = true;
        report.precision = m.precision;
        report.recall = m.recall;
        report.f1 = m.f1;
    }
}

}  // namespace detail

struct GridSearchResult {
    RunReport best;
    std::vector<RunReport> table;  // row-major over (alpha, beta)
};

/// One solve per (alpha, beta) cell, cells run concurrently. Best cell is the
/// max-F1 one when a truth is given, otherwise the one whose selected
/// structure has the lowest total variation under grid.tv_kind. Divergent
/// cells are recorded, not fatal.
inline GridSearchResult grid_search(const DistanceVector& z, const SelectionMatrix& S,
                                    const CandidateSet& cands, const SignalMatrix& X,
                                    const GridSpec& grid, const HslsParams& base,
                                    const Hypergraph* truth = nullptr) {
    grid.validate();
    const std::size_t cells = grid.alpha_grid.size() * grid.beta_grid.size();
    std::vector<RunReport> table(cells);

    detail::parallel_for(cells, [&](std::size_t cell) {
        const double alpha = grid.alpha_grid[cell / grid.beta_grid.size()];
        const double beta = grid.beta_grid[cell % grid.beta_grid.size()];
        HslsParams params = base;
        params.alpha = alpha;
        params.beta = beta;

        RunReport report;
        report.method = std::string("hsls:") + std::string(grid.tv_kind.name());
        report.tv_kind = grid.tv_kind;
        report.alpha = alpha;
        report.beta = beta;
        report.notes = "select=" + grid.selection.name();

        const auto start = std::chrono::steady_clock::now();
        try {
            const SolverState state = solve(z, S, params);
            report.iterations = state.iterations;
            report.converged = state.converged;
            const Hypergraph learned =
                select_edges(state.w, cands, grid.selection).hypergraph;
            detail::fill_structure_fields(report, learned, X, truth);
        } catch (const DivergenceError& err) {
            report.diverged = true;
            report.iterations = err.iteration();
            report.notes += ";diverged";
        }
        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        table[cell] = report;
    });

    // Argmax / argmin over the table; earlier cells win ties.
    std::size_t best = cells;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        if (table[cell].diverged) continue;
        if (best == cells) {
            best = cell;
            continue;
        }
        if (truth != nullptr) {
            if (table[cell].f1 > table[best].f1) best = cell;
        } else {
            const auto k = static_cast<std::size_t>(grid.tv_kind.index());
            if (table[cell].tv_by_kind[k] < table[best].tv_by_kind[k]) best = cell;
        }
    }
    if (best == cells) {
        throw DivergenceError("grid_search: every cell diverged", 0);
    }
    return {table[best], std::move(table)};
}

/// Convenience overload computing the smoothness costs and selection matrix
/// from signals and candidates.
inline GridSearchResult grid_search(const SignalMatrix& X, const CandidateSet& cands,
                                    const GridSpec& grid, const HslsParams& base,
                                    const Hypergraph* truth = nullptr) {
    const DistanceVector z = distance_vector(X, cands, grid.tv_kind);
    const SelectionMatrix S = build_selection_matrix(cands);
    return grid_search(z, S, cands, X, grid, base, truth);
}

struct TvComparisonRow {
    std::string structure;
    std::string signal;
    double total_variation = 0.0;
    std::size_t edge_count = 0;
};

/// Total variation of each structure against each named signal set, the
/// smoothness-dominance protocol. Structures are compared as unweighted edge
/// sets so the cells measure topology, not learned weight magnitudes.
inline std::vector<TvComparisonRow> tv_comparison(
    const Hypergraph& base, const Hypergraph& learned,
    const std::vector<std::pair<std::string, SignalMatrix>>& signals, TvKind kind) {
    if (base.num_nodes() != learned.num_nodes()) {
        throw DimensionError("tv_comparison: structures have different node counts");
    }
    std::vector<TvComparisonRow> rows;
    const std::array<std::pair<std::string, const Hypergraph*>, 2> structures = {
        std::make_pair(std::string("base"), &base),
        std::make_pair(std::string("learned"), &learned)};
    for (const auto& [name, hg] : structures) {
        const Hypergraph structure = hg->unweighted();
        for (const auto& [signal_name, X] : signals) {
            if (X.num_nodes() != hg->num_nodes()) {
                throw DimensionError("tv_comparison: signals '" + signal_name +
                                     "' are over " + std::to_string(X.num_nodes()) +
                                     " nodes, structures over " +
                                     std::to_string(hg->num_nodes()));
            }
            rows.push_back({name, signal_name, total_variation(structure, X, kind),
                            hg->num_edges()});
        }
    }
    return rows;
}

/// A method under comparison: the primal-dual learner with one smoothness
/// kind, the closed-form baseline, or the direct nearest-neighbor structure.
struct MethodSpec {
    enum class Kind { Hsls, Hgsi, KnnDirect };

    Kind kind = Kind::Hsls;
    TvKind tv = TvKind::max_square();

    static MethodSpec hsls(TvKind tv) { return {Kind::Hsls, tv}; }
    static MethodSpec hgsi() { return {Kind::Hgsi, TvKind::max_square()}; }
    static MethodSpec knn_direct() { return {Kind::KnnDirect, TvKind::max_square()}; }

    /// Parses "hsls:<tv>", "hgsi" or "knn".
    static MethodSpec parse(std::string_view s) {
        if (s == "hgsi") return hgsi();
        if (s == "knn") return knn_direct();
        if (s.substr(0, 5) == "hsls:") return hsls(TvKind::parse(s.substr(5)));
        throw InvalidSpecError("unknown method '" + std::string(s) +
                               "' (expected hsls:<tv>|hgsi|knn)");
    }

    std::string name() const {
        switch (kind) {
            case Kind::Hgsi: return "hgsi";
            case Kind::KnnDirect: return "knn";
            default: return "hsls:" + std::string(tv.name());
        }
    }
};

/// Runs every method on the identical signal matrix. All primal-dual methods
/// share one reduced candidate set; they and the closed-form baseline use the
/// same selection rule so each method is scored at the same structure size.
inline std::vector<RunReport> compare_methods(const SignalMatrix& X, const Hypergraph& truth,
                                              const CardinalitySpec& spec,
                                              const std::vector<MethodSpec>& methods,
                                              const GridSpec& grid_base,
                                              const HslsParams& params_base,
                                              const SelectionRule& equal_footing) {
    if (truth.num_edges() == 0) {
        throw InvalidSpecError("compare_methods: ground truth has no hyperedges");
    }

    // Shared reduction for every primal-dual method.
    std::optional<CandidateSet> cands;

    std::vector<RunReport> reports;
    for (const MethodSpec& method : methods) {
        const auto start = std::chrono::steady_clock::now();
        RunReport report;
        report.method = method.name();
        report.notes = "select=" + equal_footing.name();

        switch (method.kind) {
            case MethodSpec::Kind::Hsls: {
                if (!cands) cands = reduce_candidates(X, spec);
                GridSpec grid = grid_base;
                grid.tv_kind = method.tv;
                grid.selection = equal_footing;
                GridSearchResult result =
                    grid_search(X, *cands, grid, params_base, &truth);
                report = std::move(result.best);
                break;
            }
            case MethodSpec::Kind::Hgsi: {
                report.tv_kind = TvKind::max_square();
                const Hypergraph learned =
                    hgsi_pipeline(X, spec, equal_footing, TvKind::max_square());
                detail::fill_structure_fields(report, learned, X, &truth);
                break;
            }
            case MethodSpec::Kind::KnnDirect: {
                const Hypergraph learned = knn_structure(X, spec);
                detail::fill_structure_fields(report, learned, X, &truth);
                break;
            }
        }
        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        reports.push_back(std::move(report));
    }
    return reports;
}

/// Default footing: every selecting method keeps top-|truth| edges.
inline std::vector<RunReport> compare_methods(const SignalMatrix& X, const Hypergraph& truth,
                                              const CardinalitySpec& spec,
                                              const std::vector<MethodSpec>& methods,
                                              const GridSpec& grid_base,
                                              const HslsParams& params_base) {
    if (truth.num_edges() == 0) {
        throw InvalidSpecError("compare_methods: ground truth has no hyperedges");
    }
    return compare_methods(X, truth, spec, methods, grid_base, params_base,
                           SelectionRule::top_k(static_cast<int>(truth.num_edges())));
}

}  // namespace hsls
