#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hsls/errors.hpp"
#include "hsls/hypergraph.hpp"
#include "hsls/parallel.hpp"
#include "hsls/smoothness.hpp"

namespace hsls {

/// The r nearest neighbors of a node by Euclidean distance between signal
/// rows, self excluded, ties broken by ascending node index.
inline std::vector<int> knn(const SignalMatrix& X, int node, int r) {
    const int n = X.num_nodes();
    if (node < 0 || node >= n) {
        throw DimensionError("knn: node " + std::to_string(node) + " out of range for N=" +
                             std::to_string(n));
    }
    if (r < 1 || r > n - 1) {
        throw BudgetError("knn: neighbor budget " + std::to_string(r) +
                          " outside [1, N-1=" + std::to_string(n - 1) + "]");
    }
    std::vector<std::pair<double, int>> by_distance;
    by_distance.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 0; j < n; ++j) {
        if (j == node) continue;
        by_distance.emplace_back(
            pair_distance(X.row(node), X.row(j), PairMeasure::SquaredEuclidean), j);
    }
    std::sort(by_distance.begin(), by_distance.end());
    std::vector<int> out(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) out[static_cast<std::size_t>(i)] = by_distance[i].second;
    return out;
}

/// Per cardinality slot l, per node i: the r_l nearest neighbors of i.
struct NeighborLists {
    std::vector<std::vector<std::vector<int>>> lists;  // lists[l][i]
};

/// Builds all neighbor lists for a schedule. Budgets above N-1 are clamped to
/// N-1 with a warning (the full-neighborhood regime is meaningful).
inline NeighborLists build_neighbor_lists(const SignalMatrix& X, const CardinalitySpec& spec) {
    const int n = X.num_nodes();
    const auto& budgets = spec.neighbors();
    NeighborLists out;
    out.lists.resize(spec.size());
    for (std::size_t l = 0; l < spec.size(); ++l) {
        if (spec.cards()[l] > n) {
            throw InvalidSpecError("cardinality " + std::to_string(spec.cards()[l]) +
                                   " exceeds N=" + std::to_string(n));
        }
        int r = budgets[l];
        if (r > n - 1) {
            detail::warn("neighbor budget " + std::to_string(r) + " clamped to N-1=" +
                         std::to_string(n - 1));
            r = n - 1;
        }
        auto& per_node = out.lists[l];
        per_node.resize(static_cast<std::size_t>(n));
        detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
            per_node[i] = knn(X, static_cast<int>(i), r);
        });
    }
    return out;
}

/// Upper bound on candidates contributed by one node: sum over l of
/// C(r_l, k_l - 1).
inline std::uint64_t reduction_bound_per_node(const CardinalitySpec& spec) {
    std::uint64_t total = 0;
    const auto& budgets = spec.neighbors();
    for (std::size_t l = 0; l < spec.size(); ++l) {
        total += binomial_checked(budgets[l], spec.cards()[l] - 1);
    }
    return total;
}

/// Upper bound on the reduced candidate count before duplicate merging:
/// N times the per-node bound.
inline std::uint64_t reduction_bound(int num_nodes, const CardinalitySpec& spec) {
    return static_cast<std::uint64_t>(num_nodes) * reduction_bound_per_node(spec);
}

/// Nearest-neighbor candidate pruning: for every cardinality k_l and node i,
/// emit i joined with each (k_l - 1)-subset of its r_l nearest neighbors.
/// Duplicates merge; output is in canonical order.
inline CandidateSet reduce_candidates(const SignalMatrix& X, const CardinalitySpec& spec) {
    const int n = X.num_nodes();
    const NeighborLists neighbors = build_neighbor_lists(X, spec);

    std::set<Hyperedge> dedup;
    std::vector<int> edge_nodes;
    for (std::size_t l = 0; l < spec.size(); ++l) {
        const int take = spec.cards()[l] - 1;
        for (int i = 0; i < n; ++i) {
            const auto& pool = neighbors.lists[l][static_cast<std::size_t>(i)];
            if (static_cast<int>(pool.size()) < take) continue;  // k_l == n handled above
            std::vector<int> pick(static_cast<std::size_t>(take));
            for (int t = 0; t < take; ++t) pick[static_cast<std::size_t>(t)] = t;
            while (true) {
                edge_nodes.clear();
                edge_nodes.push_back(i);
                for (int t : pick) edge_nodes.push_back(pool[static_cast<std::size_t>(t)]);
                dedup.insert(Hyperedge(edge_nodes));

                int pos = take - 1;
                const int limit = static_cast<int>(pool.size());
                while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == limit - take + pos) --pos;
                if (pos < 0) break;
                ++pick[static_cast<std::size_t>(pos)];
                for (int t = pos + 1; t < take; ++t) {
                    pick[static_cast<std::size_t>(t)] = pick[static_cast<std::size_t>(t - 1)] + 1;
                }
            }
        }
    }
    return CandidateSet(n, std::vector<Hyperedge>(dedup.begin(), dedup.end()));
}

/// Percentage of ground-truth hyperedges present in a candidate set.
inline double overlap_percentage(const Hypergraph& truth, const CandidateSet& cands) {
    if (truth.num_nodes() != cands.num_nodes()) {
        throw DimensionError("overlap_percentage: node counts differ (" +
                             std::to_string(truth.num_nodes()) + " vs " +
                             std::to_string(cands.num_nodes()) + ")");
    }
    if (truth.num_edges() == 0) {
        throw InvalidSpecError("overlap_percentage undefined for an empty ground truth");
    }
    std::size_t hits = 0;
    for (const auto& e : truth.edges()) {
        if (cands.contains(e)) ++hits;
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(truth.num_edges());
}

struct OverlapRow {
    int r = 0;
    double overlap_percent = 0.0;
    std::size_t num_candidates = 0;
};

/// Overlap diagnostic: one row per shared neighbor budget r in
/// [r_min, r_max], all cardinalities using the same budget.
inline std::vector<OverlapRow> overlap_sweep(const SignalMatrix& X, const Hypergraph& truth,
                                             const CardinalitySpec& cards, int r_min,
                                             int r_max) {
    const int floor = cards.max_card() - 1;
    if (r_min < floor) {
        throw BudgetError("overlap sweep: r_min=" + std::to_string(r_min) +
                          " below max(k)-1=" + std::to_string(floor));
    }
    if (r_max < r_min) {
        throw InvalidSpecError("overlap sweep: r_max < r_min");
    }
    std::vector<OverlapRow> rows;
    rows.reserve(static_cast<std::size_t>(r_max - r_min + 1));
    for (int r = r_min; r <= r_max; ++r) {
        const CandidateSet cands = reduce_candidates(X, cards.with_uniform_neighbors(r));
        rows.push_back({r, overlap_percentage(truth, cands), cands.size()});
    }
    return rows;
}

}  // namespace hsls
