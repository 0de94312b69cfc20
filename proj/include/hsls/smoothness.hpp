#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "hsls/errors.hpp"
#include "hsls/hypergraph.hpp"
#include "hsls/parallel.hpp"

namespace hsls {

enum class Aggregator { Sum, Max };
enum class PairMeasure { SquaredEuclidean, L1 };

/// One of the four total-variation measures: an aggregator over the node
/// pairs of a hyperedge combined with a pairwise difference measure.
struct TvKind {
    Aggregator aggregator = Aggregator::Sum;
    PairMeasure pair_measure = PairMeasure::SquaredEuclidean;

    static constexpr TvKind sum_square() {
        return {Aggregator::Sum, PairMeasure::SquaredEuclidean};
    }
    static constexpr TvKind sum_absolute() { return {Aggregator::Sum, PairMeasure::L1}; }
    static constexpr TvKind max_absolute() { return {Aggregator::Max, PairMeasure::L1}; }
    static constexpr TvKind max_square() {
        return {Aggregator::Max, PairMeasure::SquaredEuclidean};
    }

    /// Stable position in tables: sum-square, sum-abs, max-abs, max-square.
    int index() const noexcept {
        if (aggregator == Aggregator::Sum) {
            return pair_measure == PairMeasure::SquaredEuclidean ? 0 : 1;
        }
        return pair_measure == PairMeasure::L1 ? 2 : 3;
    }

    std::string_view name() const noexcept {
        switch (index()) {
            case 0: return "sum-square";
            case 1: return "sum-abs";
            case 2: return "max-abs";
            default: return "max-square";
        }
    }

    static TvKind parse(std::string_view s) {
        if (s == "sum-square") return sum_square();
        if (s == "sum-abs" || s == "sum-absolute") return sum_absolute();
        if (s == "max-abs" || s == "max-absolute") return max_absolute();
        if (s == "max-square") return max_square();
        throw InvalidSpecError("unknown total-variation kind '" + std::string(s) +
                               "' (expected sum-square|sum-abs|max-abs|max-square)");
    }

    friend bool operator==(const TvKind&, const TvKind&) = default;
};

inline constexpr std::array<TvKind, 4> kAllTvKinds = {
    TvKind::sum_square(), TvKind::sum_absolute(), TvKind::max_absolute(),
    TvKind::max_square()};

/// N x P matrix of node signals, one row per node, one column per observation.
class SignalMatrix {
public:
    explicit SignalMatrix(Eigen::MatrixXd data) : data_(std::move(data)) {
        if (data_.rows() < 2) throw InvalidSpecError("signal matrix needs at least 2 node rows");
        if (data_.cols() < 1) throw InvalidSpecError("signal matrix needs at least 1 observation");
        if (!data_.allFinite()) throw InvalidSpecError("signal matrix contains non-finite values");
    }

    int num_nodes() const noexcept { return static_cast<int>(data_.rows()); }
    int num_observations() const noexcept { return static_cast<int>(data_.cols()); }
    const Eigen::MatrixXd& data() const noexcept { return data_; }
    auto row(int i) const { return data_.row(i); }

    friend bool operator==(const SignalMatrix& a, const SignalMatrix& b) {
        return a.data_ == b.data_;
    }

private:
    Eigen::MatrixXd data_;
};

/// Candidate smoothness costs aligned with a CandidateSet.
using DistanceVector = Eigen::VectorXd;

/// Pairwise node distance: squared Euclidean or l1 between two time-series.
/// The accumulation is a plain sequential loop so results are reproducible
/// against an elementwise reference.
template <typename DerivedA, typename DerivedB>
double pair_distance(const Eigen::MatrixBase<DerivedA>& xi,
                     const Eigen::MatrixBase<DerivedB>& xj, PairMeasure measure) {
    if (xi.size() != xj.size()) {
        throw DimensionError("pair_distance: lengths differ (" + std::to_string(xi.size()) +
                             " vs " + std::to_string(xj.size()) + ")");
    }
    double acc = 0.0;
    for (Eigen::Index p = 0; p < xi.size(); ++p) {
        const double d = xi(p) - xj(p);
        acc += measure == PairMeasure::SquaredEuclidean ? d * d : std::abs(d);
    }
    return acc;
}

/// Smoothness cost of a single hyperedge: aggregate of pair_distance over all
/// unordered node pairs, in (i, j) lexicographic order.
inline double hyperedge_distance(const SignalMatrix& X, const Hyperedge& e, TvKind kind) {
    if (e.max_node() >= X.num_nodes()) {
        throw DimensionError("hyperedge node index " + std::to_string(e.max_node()) +
                             " out of range for N=" + std::to_string(X.num_nodes()));
    }
    const auto& nodes = e.nodes();
    double acc = 0.0;
    for (std::size_t a = 0; a + 1 < nodes.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            const double pd = pair_distance(X.row(nodes[a]), X.row(nodes[b]), kind.pair_measure);
            acc = kind.aggregator == Aggregator::Sum ? acc + pd : std::max(acc, pd);
        }
    }
    return acc;
}

/// z vector: one smoothness cost per candidate. Candidate slots are filled in
/// parallel but the output is identical for any worker count.
inline DistanceVector distance_vector(const SignalMatrix& X, const CandidateSet& cands,
                                      TvKind kind) {
    if (cands.num_nodes() != X.num_nodes()) {
        throw DimensionError("distance_vector: candidate set is over " +
                             std::to_string(cands.num_nodes()) + " nodes, signals over " +
                             std::to_string(X.num_nodes()));
    }
    DistanceVector z(static_cast<Eigen::Index>(cands.size()));
    detail::parallel_for(cands.size(), [&](std::size_t d) {
        z[static_cast<Eigen::Index>(d)] = hyperedge_distance(X, cands[d], kind);
    });
    return z;
}

/// Total variation of signals on a weighted hypergraph: sum over edges of
/// weight times the edge's smoothness cost. Unweighted edges count as 1.
inline double total_variation(const Hypergraph& H, const SignalMatrix& X, TvKind kind) {
    if (H.num_nodes() != X.num_nodes()) {
        throw DimensionError("total_variation: hypergraph is over " +
                             std::to_string(H.num_nodes()) + " nodes, signals over " +
                             std::to_string(X.num_nodes()));
    }
    double acc = 0.0;
    for (std::size_t d = 0; d < H.num_edges(); ++d) {
        acc += H.weight(d) * hyperedge_distance(X, H.edges()[d], kind);
    }
    return acc;
}

}  // namespace hsls
