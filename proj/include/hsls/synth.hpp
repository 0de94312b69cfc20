#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "hsls/errors.hpp"
#include "hsls/hypergraph.hpp"
#include "hsls/parallel.hpp"
#include "hsls/rng.hpp"
#include "hsls/smoothness.hpp"

namespace hsls {

/// Y distinct hyperedges drawn uniformly without replacement from the full
/// candidate set. When coverage is feasible, draws are repeated until every
/// node belongs to at least one hyperedge.
inline Hypergraph random_hypergraph(int num_nodes, const CardinalitySpec& spec,
                                    std::size_t num_edges, std::uint64_t seed,
                                    std::uint64_t cap = kDefaultCandidateCap) {
    const CandidateSet full = enumerate_full_candidates(num_nodes, spec, cap);
    if (num_edges > full.size()) {
        throw FeasibilityError("requested " + std::to_string(num_edges) +
                               " hyperedges but only " + std::to_string(full.size()) +
                               " exist");
    }

    Rng rng(seed);
    std::vector<std::size_t> pool(full.size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    const bool coverage_feasible =
        num_edges * static_cast<std::size_t>(spec.max_card()) >=
        static_cast<std::size_t>(num_nodes);

    std::vector<Hyperedge> edges;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        // Partial Fisher-Yates: the first num_edges entries are a uniform draw.
        for (std::size_t t = 0; t < num_edges; ++t) {
            const std::size_t j = t + rng.below(pool.size() - t);
            std::swap(pool[t], pool[j]);
        }
        edges.clear();
        std::vector<char> covered(static_cast<std::size_t>(num_nodes), 0);
        for (std::size_t t = 0; t < num_edges; ++t) {
            edges.push_back(full[pool[t]]);
            for (int v : edges.back().nodes()) covered[static_cast<std::size_t>(v)] = 1;
        }
        const bool all_covered =
            std::find(covered.begin(), covered.end(), 0) == covered.end();
        if (all_covered || !coverage_feasible) return Hypergraph(num_nodes, std::move(edges));
    }
    detail::warn("random_hypergraph: gave up covering every node after 1000 attempts");
    return Hypergraph(num_nodes, std::move(edges));
}

/// Bipartite star expansion of a hypergraph: one vertex per node, one per
/// hyperedge, unit edges between a hyperedge vertex and its members. The
/// Laplacian carries diag_noise added to every diagonal entry.
struct StarExpansion {
    int num_nodes = 0;   // N node vertices, indices 0..N-1
    int num_edges = 0;   // Y hyperedge vertices, indices N..N+Y-1
    Eigen::MatrixXd adjacency;  // (N+Y) x (N+Y), binary, bipartite
    Eigen::MatrixXd laplacian;  // degree - adjacency + diag_noise * I
    double diag_noise = 0.0;

    int dimension() const noexcept { return num_nodes + num_edges; }
};

inline StarExpansion star_laplacian(const Hypergraph& H, double diag_noise = 1e-3) {
    if (H.num_edges() == 0) {
        throw InvalidSpecError("star_laplacian: hypergraph has no hyperedges");
    }
    if (!(diag_noise >= 0.0)) throw InvalidSpecError("diag_noise must be >= 0");

    const int n = H.num_nodes();
    const int y = static_cast<int>(H.num_edges());
    const int m = n + y;

    StarExpansion star;
    star.num_nodes = n;
    star.num_edges = y;
    star.diag_noise = diag_noise;
    star.adjacency = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < y; ++j) {
        for (int v : H.edges()[static_cast<std::size_t>(j)].nodes()) {
            star.adjacency(v, n + j) = 1.0;
            star.adjacency(n + j, v) = 1.0;
        }
    }
    star.laplacian = -star.adjacency;
    for (int i = 0; i < m; ++i) {
        star.laplacian(i, i) = star.adjacency.row(i).sum() + diag_noise;
    }
    return star;
}

/// P independent draws from the zero-mean Gaussian whose covariance is the
/// pseudo-inverse of the star Laplacian, one (N+Y)-dimensional sample per
/// column. Eigenvalues below 1e-10 are treated as null directions.
inline Eigen::MatrixXd sample_star_signals(const StarExpansion& star, int P,
                                           std::uint64_t seed) {
    if (P < 1) throw InvalidSpecError("need at least one observation");
    const int m = star.dimension();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(star.laplacian);
    if (eigen.info() != Eigen::Success) {
        throw std::runtime_error("sample_star_signals: eigendecomposition failed");
    }
    Eigen::VectorXd scale(m);
    for (int i = 0; i < m; ++i) {
        const double lambda = eigen.eigenvalues()[i];
        scale[i] = lambda < 1e-10 ? 0.0 : 1.0 / std::sqrt(lambda);
    }
    const Eigen::MatrixXd factor = eigen.eigenvectors() * scale.asDiagonal();

    Rng rng(seed);
    Eigen::MatrixXd out(m, P);
    Eigen::VectorXd g(m);
    for (int p = 0; p < P; ++p) {
        for (int i = 0; i < m; ++i) g[i] = rng.normal();
        out.col(p) = factor * g;
    }
    return out;
}

/// Smooth node signals: the node block of the star-expansion samples.
inline SignalMatrix sample_smooth_signals(const StarExpansion& star, int P,
                                          std::uint64_t seed) {
    return SignalMatrix(sample_star_signals(star, P, seed).topRows(star.num_nodes));
}

}  // namespace hsls
