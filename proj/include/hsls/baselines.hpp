#pragma once

#include <set>
#include <vector>

#include <Eigen/Core>

#include "hsls/hypergraph.hpp"
#include "hsls/reduction.hpp"
#include "hsls/smoothness.hpp"
#include "hsls/solver.hpp"

namespace hsls {

/// Closed-form weights w_d = 1 / (z_d + 1); every output lies in (0, 1].
inline Eigen::VectorXd hgsi_solve(const DistanceVector& z) {
    if ((z.array() < 0.0).any()) {
        throw InvalidSpecError("hgsi_solve: distance vector has negative entries");
    }
    return (z.array() + 1.0).inverse().matrix();
}

/// Closed-form baseline pipeline: candidates from the minimal k_l - 1
/// neighbor budgets, max-square smoothness costs by default, closed-form
/// weights, then edge selection.
inline Hypergraph hgsi_pipeline(const SignalMatrix& X, const CardinalitySpec& spec,
                                const SelectionRule& rule = SelectionRule::relative(0.5),
                                TvKind kind = TvKind::max_square()) {
    const CandidateSet cands = reduce_candidates(X, spec.with_minimal_neighbors());
    const DistanceVector z = distance_vector(X, cands, kind);
    return select_edges(hgsi_solve(z), cands, rule).hypergraph;
}

/// Direct nearest-neighbor structure: for each node and each cardinality k_l,
/// one hyperedge made of the node and its k_l - 1 nearest neighbors.
/// Duplicates merge; the result is unweighted.
inline Hypergraph knn_structure(const SignalMatrix& X, const CardinalitySpec& spec) {
    const int n = X.num_nodes();
    std::set<Hyperedge> dedup;
    for (int k : spec.cards()) {
        for (int i = 0; i < n; ++i) {
            std::vector<int> nodes = knn(X, i, k - 1);
            nodes.push_back(i);
            dedup.insert(Hyperedge(std::move(nodes)));
        }
    }
    return Hypergraph(n, std::vector<Hyperedge>(dedup.begin(), dedup.end()));
}

}  // namespace hsls
