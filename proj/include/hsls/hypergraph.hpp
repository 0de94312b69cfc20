#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hsls/errors.hpp"

namespace hsls {

/// A hyperedge: a set of at least two distinct node indices, stored as a
/// strictly increasing tuple. Comparison order is (cardinality, node tuple),
/// which is the canonical candidate order used everywhere in this library.
class Hyperedge {
public:
    Hyperedge() = default;

    explicit Hyperedge(std::vector<int> nodes) : nodes_(std::move(nodes)) {
        std::sort(nodes_.begin(), nodes_.end());
        if (nodes_.size() < 2) {
            throw InvalidSpecError("hyperedge needs at least 2 nodes, got " +
                                   std::to_string(nodes_.size()));
        }
        if (nodes_.front() < 0) {
            throw InvalidSpecError("hyperedge node indices must be non-negative");
        }
        if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
            throw InvalidSpecError("hyperedge contains a duplicate node index");
        }
    }

    Hyperedge(std::initializer_list<int> nodes) : Hyperedge(std::vector<int>(nodes)) {}

    const std::vector<int>& nodes() const noexcept { return nodes_; }
    int cardinality() const noexcept { return static_cast<int>(nodes_.size()); }
    int max_node() const noexcept { return nodes_.back(); }

    bool contains(int v) const {
        return std::binary_search(nodes_.begin(), nodes_.end(), v);
    }

    /// True when every node of this edge is also in other.
    bool subset_of(const Hyperedge& other) const {
        return std::includes(other.nodes_.begin(), other.nodes_.end(),
                             nodes_.begin(), nodes_.end());
    }

    friend bool operator==(const Hyperedge& a, const Hyperedge& b) {
        return a.nodes_ == b.nodes_;
    }

    friend bool operator<(const Hyperedge& a, const Hyperedge& b) {
        if (a.nodes_.size() != b.nodes_.size()) return a.nodes_.size() < b.nodes_.size();
        return a.nodes_ < b.nodes_;
    }

private:
    std::vector<int> nodes_;
};

/// Node count plus a duplicate-free edge list in canonical order, with
/// optional non-negative weights. Duplicate input edges are merged, keeping
/// the larger weight. Immutable after construction.
class Hypergraph {
public:
    Hypergraph(int num_nodes, std::vector<Hyperedge> edges = {},
               std::optional<std::vector<double>> weights = {})
        : num_nodes_(num_nodes), edges_(std::move(edges)), weights_(std::move(weights)) {
        if (num_nodes_ < 1) {
            throw InvalidSpecError("hypergraph needs a positive node count, got " +
                                   std::to_string(num_nodes_));
        }
        if (weights_ && weights_->size() != edges_.size()) {
            throw DimensionError("weights length " + std::to_string(weights_->size()) +
                                 " != edge count " + std::to_string(edges_.size()));
        }
        for (const auto& e : edges_) {
            if (e.max_node() >= num_nodes_) {
                throw InvalidSpecError("hyperedge node index " + std::to_string(e.max_node()) +
                                       " out of range for N=" + std::to_string(num_nodes_));
            }
        }
        if (weights_) {
            for (double w : *weights_) {
                if (!(w >= 0.0)) throw InvalidSpecError("hyperedge weights must be >= 0");
            }
        }
        canonicalize();
    }

    int num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Hyperedge>& edges() const noexcept { return edges_; }

    bool has_weights() const noexcept { return weights_.has_value(); }

    /// Weight of edge d; 1.0 when the hypergraph is unweighted.
    double weight(std::size_t d) const { return weights_ ? (*weights_)[d] : 1.0; }

    const std::vector<double>& weights() const {
        if (!weights_) throw InvalidSpecError("hypergraph has no weights");
        return *weights_;
    }

    bool contains(const Hyperedge& e) const {
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    /// Copy with weights dropped (structure-only view for TV comparisons).
    Hypergraph unweighted() const { return Hypergraph(num_nodes_, edges_); }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_ &&
               a.weights_ == b.weights_;
    }

private:
    void canonicalize() {
        std::vector<std::size_t> order(edges_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (edges_[a] == edges_[b]) return a < b;
            return edges_[a] < edges_[b];
        });

        std::vector<Hyperedge> edges;
        std::vector<double> weights;
        edges.reserve(edges_.size());
        if (weights_) weights.reserve(edges_.size());
        for (std::size_t i : order) {
            if (!edges.empty() && edges.back() == edges_[i]) {
                if (weights_) weights.back() = std::max(weights.back(), (*weights_)[i]);
                continue;
            }
            edges.push_back(edges_[i]);
            if (weights_) weights.push_back((*weights_)[i]);
        }
        edges_ = std::move(edges);
        if (weights_) weights_ = std::move(weights);
    }

    int num_nodes_;
    std::vector<Hyperedge> edges_;
    std::optional<std::vector<double>> weights_;
};

/// Cardinality schedule K = {k_1 < k_2 < ...}, each k_l >= 2, with an optional
/// aligned neighbor-budget list R, r_l >= k_l - 1.
class CardinalitySpec {
public:
    explicit CardinalitySpec(std::vector<int> cards,
                             std::optional<std::vector<int>> neighbors = {})
        : cards_(std::move(cards)), neighbors_(std::move(neighbors)) {
        if (cards_.empty()) throw InvalidSpecError("cardinality set is empty");
        if (neighbors_ && neighbors_->size() != cards_.size()) {
            throw InvalidSpecError("neighbor budgets R must align with cardinalities K");
        }
        // Sort K ascending, carrying R along.
        std::vector<std::size_t> order(cards_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return cards_[a] < cards_[b]; });
        std::vector<int> sorted_cards(cards_.size());
        std::vector<int> sorted_neigh(cards_.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            sorted_cards[i] = cards_[order[i]];
            if (neighbors_) sorted_neigh[i] = (*neighbors_)[order[i]];
        }
        cards_ = std::move(sorted_cards);
        if (neighbors_) neighbors_ = std::move(sorted_neigh);

        for (std::size_t l = 0; l < cards_.size(); ++l) {
            if (cards_[l] < 2) {
                throw InvalidSpecError("cardinality " + std::to_string(cards_[l]) +
                                       " < 2 is not a hyperedge");
            }
            if (l > 0 && cards_[l] == cards_[l - 1]) {
                throw InvalidSpecError("duplicate cardinality " + std::to_string(cards_[l]));
            }
            if (neighbors_ && (*neighbors_)[l] < cards_[l] - 1) {
                throw BudgetError("neighbor budget r=" + std::to_string((*neighbors_)[l]) +
                                  " < k-1=" + std::to_string(cards_[l] - 1));
            }
        }
    }

    const std::vector<int>& cards() const noexcept { return cards_; }
    std::size_t size() const noexcept { return cards_.size(); }
    int max_card() const noexcept { return cards_.back(); }

    bool has_neighbors() const noexcept { return neighbors_.has_value(); }
    const std::vector<int>& neighbors() const {
        if (!neighbors_) throw InvalidSpecError("cardinality spec carries no neighbor budgets");
        return *neighbors_;
    }

    /// Same cardinalities with every budget set to r.
    CardinalitySpec with_uniform_neighbors(int r) const {
        return CardinalitySpec(cards_, std::vector<int>(cards_.size(), r));
    }

    /// Same cardinalities with the minimal budgets r_l = k_l - 1.
    CardinalitySpec with_minimal_neighbors() const {
        std::vector<int> r(cards_.size());
        for (std::size_t l = 0; l < cards_.size(); ++l) r[l] = cards_[l] - 1;
        return CardinalitySpec(cards_, std::move(r));
    }

private:
    std::vector<int> cards_;
    std::optional<std::vector<int>> neighbors_;
};

/// Ordered, duplicate-free list of candidate hyperedges over N nodes.
/// Index d is the coordinate of w, z and column d of the selection matrix.
class CandidateSet {
public:
    CandidateSet(int num_nodes, std::vector<Hyperedge> candidates)
        : num_nodes_(num_nodes), candidates_(std::move(candidates)) {
        if (num_nodes_ < 1) throw InvalidSpecError("candidate set needs a positive node count");
        for (const auto& e : candidates_) {
            if (e.max_node() >= num_nodes_) {
                throw InvalidSpecError("candidate node index " + std::to_string(e.max_node()) +
                                       " out of range for N=" + std::to_string(num_nodes_));
            }
        }
        std::sort(candidates_.begin(), candidates_.end());
        candidates_.erase(std::unique(candidates_.begin(), candidates_.end()),
                          candidates_.end());
    }

    int num_nodes() const noexcept { return num_nodes_; }
    std::size_t size() const noexcept { return candidates_.size(); }
    bool empty() const noexcept { return candidates_.empty(); }
    const Hyperedge& operator[](std::size_t d) const { return candidates_[d]; }
    const std::vector<Hyperedge>& candidates() const noexcept { return candidates_; }

    bool contains(const Hyperedge& e) const {
        return std::binary_search(candidates_.begin(), candidates_.end(), e);
    }

    std::optional<std::size_t> index_of(const Hyperedge& e) const {
        auto it = std::lower_bound(candidates_.begin(), candidates_.end(), e);
        if (it == candidates_.end() || !(*it == e)) return std::nullopt;
        return static_cast<std::size_t>(it - candidates_.begin());
    }

    /// True when every candidate here also appears in other.
    bool subset_of(const CandidateSet& other) const {
        return std::includes(other.candidates_.begin(), other.candidates_.end(),
                             candidates_.begin(), candidates_.end());
    }

private:
    int num_nodes_;
    std::vector<Hyperedge> candidates_;
};

/// Binary N x D selection matrix, stored sparse by column: column d holds the
/// member nodes of candidate d, so (S w)_i sums the weights of all candidates
/// containing node i.
class SelectionMatrix {
public:
    SelectionMatrix() = default;

    explicit SelectionMatrix(const CandidateSet& cands) : rows_(cands.num_nodes()) {
        cols_.reserve(cands.size());
        for (std::size_t d = 0; d < cands.size(); ++d) cols_.push_back(cands[d].nodes());
    }

    int rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_.size(); }
    const std::vector<int>& column(std::size_t d) const { return cols_[d]; }

    std::size_t nonzeros() const noexcept {
        std::size_t nnz = 0;
        for (const auto& c : cols_) nnz += c.size();
        return nnz;
    }

    /// S w: per-node sums in ascending column order.
    Eigen::VectorXd apply(const Eigen::VectorXd& w) const {
        if (w.size() != static_cast<Eigen::Index>(cols_.size())) {
            throw DimensionError("S*w: w has length " + std::to_string(w.size()) +
                                 ", expected " + std::to_string(cols_.size()));
        }
        Eigen::VectorXd out = Eigen::VectorXd::Zero(rows_);
        for (std::size_t d = 0; d < cols_.size(); ++d) {
            const double wd = w[static_cast<Eigen::Index>(d)];
            for (int i : cols_[d]) out[i] += wd;
        }
        return out;
    }

    /// S' d: per-candidate sums of the incident node values.
    Eigen::VectorXd apply_transpose(const Eigen::VectorXd& d) const {
        if (d.size() != rows_) {
            throw DimensionError("S'*d: d has length " + std::to_string(d.size()) +
                                 ", expected " + std::to_string(rows_));
        }
        Eigen::VectorXd out(static_cast<Eigen::Index>(cols_.size()));
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            double acc = 0.0;
            for (int i : cols_[c]) acc += d[i];
            out[static_cast<Eigen::Index>(c)] = acc;
        }
        return out;
    }

    /// Largest singular value by power iteration on S S' with a fixed
    /// all-ones start vector. Returns 0 for an empty matrix.
    double spectral_norm(double rel_tol = 1e-8, int max_iter = 10000) const {
        if (rows_ == 0 || cols_.empty()) return 0.0;
        Eigen::VectorXd v = Eigen::VectorXd::Ones(rows_);
        v /= v.norm();
        double lambda = 0.0;
        for (int it = 0; it < max_iter; ++it) {
            Eigen::VectorXd u = apply(apply_transpose(v));
            const double norm = u.norm();
            if (norm == 0.0) return 0.0;
            const double lambda_next = v.dot(u);
            v = u / norm;
            if (it > 0 && std::abs(lambda_next - lambda) <= rel_tol * std::abs(lambda_next)) {
                lambda = lambda_next;
                break;
            }
            lambda = lambda_next;
        }
        return std::sqrt(std::max(lambda, 0.0));
    }

private:
    int rows_ = 0;
    std::vector<std::vector<int>> cols_;
};

inline SelectionMatrix build_selection_matrix(const CandidateSet& cands) {
    return SelectionMatrix(cands);
}

/// C(n, k) with overflow detection; throws std::overflow_error instead of
/// wrapping.
inline std::uint64_t binomial_checked(int n, int k) {
    if (n < 0 || k < 0) throw InvalidSpecError("binomial arguments must be non-negative");
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (int i = 1; i <= k; ++i) {
        c *= static_cast<unsigned>(n - k + i);
        c /= static_cast<unsigned>(i);
        if (c > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("binomial(" + std::to_string(n) + "," +
                                      std::to_string(k) + ") overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(c);
}

/// Number of distinct hyperedges over N nodes with cardinalities in K:
/// sum over l of C(N, k_l).
inline std::uint64_t count_full_candidates(int num_nodes, const CardinalitySpec& spec) {
    std::uint64_t total = 0;
    for (int k : spec.cards()) {
        if (k > num_nodes) {
            throw InvalidSpecError("cardinality " + std::to_string(k) + " exceeds N=" +
                                   std::to_string(num_nodes));
        }
        const std::uint64_t c = binomial_checked(num_nodes, k);
        if (total > std::numeric_limits<std::uint64_t>::max() - c) {
            throw std::overflow_error("candidate count overflows 64 bits");
        }
        total += c;
    }
    return total;
}

inline constexpr std::uint64_t kDefaultCandidateCap = 10'000'000;

/// Every hyperedge over N nodes with cardinality in K, in canonical order.
/// Refuses to materialize more than cap candidates.
inline CandidateSet enumerate_full_candidates(int num_nodes, const CardinalitySpec& spec,
                                              std::uint64_t cap = kDefaultCandidateCap) {
    std::uint64_t total;
    try {
        total = count_full_candidates(num_nodes, spec);
    } catch (const std::overflow_error&) {
        throw FeasibilityError("candidate count exceeds 2^64; cap is " + std::to_string(cap));
    }
    if (total > cap) {
        throw FeasibilityError("full enumeration would produce " + std::to_string(total) +
                               " candidates, above the cap of " + std::to_string(cap));
    }

    std::vector<Hyperedge> out;
    out.reserve(static_cast<std::size_t>(total));
    for (int k : spec.cards()) {
        std::vector<int> comb(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
        while (true) {
            out.emplace_back(comb);
            // Advance to the next k-combination of {0..N-1}.
            int pos = k - 1;
            while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == num_nodes - k + pos) --pos;
            if (pos < 0) break;
            ++comb[static_cast<std::size_t>(pos)];
            for (int j = pos + 1; j < k; ++j) {
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
    }
    return CandidateSet(num_nodes, std::move(out));
}

struct SetMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Exact-set precision/recall/F1 between a learned and a true edge set.
/// Both sets empty counts as perfect recovery.
inline SetMetrics set_metrics(const Hypergraph& learned, const Hypergraph& truth) {
    if (learned.num_nodes() != truth.num_nodes()) {
        throw DimensionError("set_metrics: node counts differ (" +
                             std::to_string(learned.num_nodes()) + " vs " +
                             std::to_string(truth.num_nodes()) + ")");
    }
    if (learned.num_edges() == 0 && truth.num_edges() == 0) return {1.0, 1.0, 1.0};

    std::size_t hits = 0;
    for (const auto& e : learned.edges()) {
        if (truth.contains(e)) ++hits;
    }
    SetMetrics m;
    m.precision = learned.num_edges() ? static_cast<double>(hits) / learned.num_edges() : 0.0;
    m.recall = truth.num_edges() ? static_cast<double>(hits) / truth.num_edges() : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

}  // namespace hsls
