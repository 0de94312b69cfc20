#pragma once

/* Primal-dual forward-backward-forward solver for weighted hyperedge
 * recovery:
 *
 *     minimize_{w >= 0}   z'w  -  alpha * 1'log(Sw)  +  beta * ||w||_2^2
 *
 * where w holds one non-negative weight per candidate hyperedge, z holds the
 * candidate smoothness costs, and S is the binary node-by-candidate selection
 * matrix (Sw is the vector of node degrees, kept positive by the log
 * barrier). Split as
 *
 *     f(w) = z'w + i{w >= 0},   g(u) = -alpha * 1'log(u),   h(w) = beta ||w||^2,
 *
 * f and g* are proximable in closed form, h is smooth with Lipschitz gradient
 * constant zeta = 2 beta. Each iteration takes one gradient step, the two
 * proximal steps, and a correction step; the step size is a constant inside
 * the admissible interval [eps, (1-eps)/mu] with mu = zeta + ||S||_spectral.
 */

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hsls/errors.hpp"
#include "hsls/hypergraph.hpp"
#include "hsls/smoothness.hpp"

namespace hsls {

struct HslsParams {
    double alpha = 1.0;        // degree-positivity strength
    double beta = 1.0;         // sparsity strength
    double eta = 1e-9;         // relative-change stopping threshold
    int i_max = 20000;         // iteration cap
    double epsilon_frac = 0.5; // position of eps and gamma inside their intervals

    void validate() const {
        if (!(alpha > 0.0)) throw InvalidSpecError("alpha must be > 0");
        if (!(beta > 0.0)) throw InvalidSpecError("beta must be > 0");
        if (!(eta > 0.0)) throw InvalidSpecError("eta must be > 0");
        if (i_max < 1) throw InvalidSpecError("i_max must be >= 1");
        if (!(epsilon_frac > 0.0) || !(epsilon_frac < 1.0)) {
            throw InvalidSpecError("epsilon_frac must be in (0, 1)");
        }
    }
};

/// Constant step size and the quantities defining its admissible interval.
struct StepSequence {
    double zeta = 0.0;           // Lipschitz constant of grad h, 2*beta
    double spectral_norm = 0.0;  // ||S||_s
    double mu = 0.0;             // zeta + ||S||_s
    double eps = 0.0;            // epsilon_frac / (1 + mu)
    double gamma = 0.0;          // eps + epsilon_frac * ((1 - eps)/mu - eps)
};

inline StepSequence step_sequence(double beta, const SelectionMatrix& S,
                                  double epsilon_frac) {
    if (!(beta > 0.0)) throw InvalidSpecError("beta must be > 0");
    if (!(epsilon_frac > 0.0) || !(epsilon_frac < 1.0)) {
        throw InvalidSpecError("epsilon_frac must be in (0, 1)");
    }
    StepSequence seq;
    seq.zeta = 2.0 * beta;
    seq.spectral_norm = S.spectral_norm();
    seq.mu = seq.zeta + seq.spectral_norm;
    seq.eps = epsilon_frac / (1.0 + seq.mu);
    const double hi = (1.0 - seq.eps) / seq.mu;
    seq.gamma = seq.eps + epsilon_frac * (hi - seq.eps);
    return seq;
}

/// Gradient of the sparsity term: 2*beta*x.
inline Eigen::VectorXd grad_h(const Eigen::VectorXd& x, double beta) {
    return 2.0 * beta * x;
}

/// Prox of z'x + i{x >= 0}: shift by gamma*z, threshold at zero.
inline Eigen::VectorXd prox_f(const Eigen::VectorXd& x, const DistanceVector& z,
                              double gamma) {
    if (x.size() != z.size()) {
        throw DimensionError("prox_f: x has length " + std::to_string(x.size()) +
                             ", z has length " + std::to_string(z.size()));
    }
    return (x - gamma * z).cwiseMax(0.0);
}

/// Prox of the log barrier -alpha*1'log(x): positive root of the per-entry
/// quadratic.
inline Eigen::VectorXd prox_g(const Eigen::VectorXd& x, double alpha, double gamma) {
    return 0.5 * (x.array() + (x.array().square() + 4.0 * alpha * gamma).sqrt()).matrix();
}

/// Prox of the conjugate of the log barrier, by Moreau decomposition:
/// x - gamma*(y + sqrt(y^2 + 4 alpha / gamma))/2 with y = x/gamma.
inline Eigen::VectorXd prox_g_conj(const Eigen::VectorXd& x, double alpha, double gamma) {
    const Eigen::ArrayXd y = x.array() / gamma;
    return x - (0.5 * gamma) * (y + (y.square() + 4.0 * alpha / gamma).sqrt()).matrix();
}

/// Objective value at w. For reporting only: degrees are floored at 1e-12
/// inside the log so early iterates with a zero degree stay printable.
inline double hsls_objective(const Eigen::VectorXd& w, const DistanceVector& z,
                             const SelectionMatrix& S, double alpha, double beta) {
    const Eigen::VectorXd degrees = S.apply(w);
    const double log_sum = degrees.array().max(1e-12).log().sum();
    return z.dot(w) - alpha * log_sum + beta * w.squaredNorm();
}

struct SolverState {
    Eigen::VectorXd w;  // primal candidate weights, >= 0
    Eigen::VectorXd d;  // dual variable, one entry per node
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;    // objective at w0 and each iterate
    std::vector<double> primal_residuals;   // ||w+ - w||^2 / ||w||^2 per iteration
    std::vector<double> dual_residuals;     // ||d+ - d||^2 / ||d||^2 per iteration
};

/// Runs the forward-backward-forward iteration until both relative-change
/// tests drop below eta or i_max is reached. Defaults: w0 uniform 1e-2,
/// d0 = S w0. Non-finite iterates raise DivergenceError. The final w is
/// thresholded at zero so the reported solution lies in the feasible set.
inline SolverState solve(const DistanceVector& z, const SelectionMatrix& S,
                         const HslsParams& params,
                         std::optional<Eigen::VectorXd> w0 = std::nullopt,
                         std::optional<Eigen::VectorXd> d0 = std::nullopt) {
    params.validate();
    const auto dim = static_cast<Eigen::Index>(S.cols());
    if (z.size() != dim) {
        throw DimensionError("solve: z has length " + std::to_string(z.size()) +
                             ", S has " + std::to_string(S.cols()) + " columns");
    }
    if ((z.array() < 0.0).any()) {
        throw InvalidSpecError("solve: distance vector has negative entries");
    }

    Eigen::VectorXd w = w0 ? std::move(*w0) : Eigen::VectorXd::Constant(dim, 1e-2);
    if (w.size() != dim) throw DimensionError("solve: w0 length does not match S");
    if ((w.array() < 0.0).any()) throw InvalidSpecError("solve: w0 must be non-negative");
    Eigen::VectorXd d = d0 ? std::move(*d0) : S.apply(w);
    if (d.size() != S.rows()) throw DimensionError("solve: d0 length does not match S");
    if ((d.array() < 0.0).any()) throw InvalidSpecError("solve: d0 must be non-negative");

    const double gamma = step_sequence(params.beta, S, params.epsilon_frac).gamma;
    const double alpha = params.alpha;
    const double beta = params.beta;

    SolverState state;
    state.objective_trace.reserve(static_cast<std::size_t>(params.i_max) + 1);
    state.objective_trace.push_back(hsls_objective(w, z, S, alpha, beta));

    int iter = 0;
    for (; iter < params.i_max;) {
        const Eigen::VectorXd y = w - gamma * (grad_h(w, beta) + S.apply_transpose(d));
        const Eigen::VectorXd y_dual = d + gamma * S.apply(w);
        const Eigen::VectorXd p = prox_f(y, z, gamma);
        const Eigen::VectorXd p_dual = prox_g_conj(y_dual, alpha, gamma);
        const Eigen::VectorXd q = p - gamma * (grad_h(p, beta) + S.apply_transpose(p_dual));
        const Eigen::VectorXd q_dual = p_dual + gamma * S.apply(p);
        Eigen::VectorXd w_next = w - y + q;
        Eigen::VectorXd d_next = d - y_dual + q_dual;

        if (!w_next.allFinite() || !d_next.allFinite()) {
            throw DivergenceError("solve: iterate became non-finite", iter);
        }

        const double w_norm = w.squaredNorm();
        const double d_norm = d.squaredNorm();
        const double primal = (w_next - w).squaredNorm() / (w_norm > 0.0 ? w_norm : 1.0);
        const double dual = (d_next - d).squaredNorm() / (d_norm > 0.0 ? d_norm : 1.0);

        w = std::move(w_next);
        d = std::move(d_next);
        ++iter;

        state.objective_trace.push_back(hsls_objective(w, z, S, alpha, beta));
        state.primal_residuals.push_back(primal);
        state.dual_residuals.push_back(dual);

        if (primal < params.eta && dual < params.eta) {
            state.converged = true;
            break;
        }
    }

    state.iterations = iter;
    state.w = w.cwiseMax(0.0);
    state.d = std::move(d);
    return state;
}

/// How learned weights become a structure: keep weights above a fraction of
/// the maximum, or keep the m largest.
struct SelectionRule {
    enum class Kind { RelativeThreshold, TopK };

    Kind kind = Kind::RelativeThreshold;
    double tau = 0.5;
    int m = 1;

    static SelectionRule relative(double tau) {
        if (!(tau >= 0.0)) throw InvalidSpecError("relative threshold must be >= 0");
        SelectionRule r;
        r.kind = Kind::RelativeThreshold;
        r.tau = tau;
        return r;
    }

    static SelectionRule top_k(int m) {
        if (m < 1) throw InvalidSpecError("top-k selection needs m >= 1");
        SelectionRule r;
        r.kind = Kind::TopK;
        r.m = m;
        return r;
    }

    /// Parses "topk:<m>" or "rel:<tau>".
    static SelectionRule parse(std::string_view s) {
        const auto colon = s.find(':');
        if (colon != std::string_view::npos) {
            const std::string_view head = s.substr(0, colon);
            const std::string value(s.substr(colon + 1));
            try {
                if (head == "topk") return top_k(std::stoi(value));
                if (head == "rel") return relative(std::stod(value));
            } catch (const InvalidSpecError&) {
                throw;
            } catch (const std::exception&) {
                // fall through to the error below
            }
        }
        throw InvalidSpecError("bad selection rule '" + std::string(s) +
                               "' (expected topk:<m> or rel:<tau>)");
    }

    std::string name() const {
        if (kind == Kind::TopK) return "topk:" + std::to_string(m);
        std::string t = std::to_string(tau);
        return "rel:" + t;
    }
};

struct EdgeSelection {
    Hypergraph hypergraph;
    bool all_zero = false;  // top-k was asked for but every weight is zero
};

/// Turns a weight vector over candidates into a weighted hypergraph.
/// Relative rule keeps w_d > tau * max(w); top-k keeps the m largest with
/// ties broken by canonical candidate order.
inline EdgeSelection select_edges(const Eigen::VectorXd& w, const CandidateSet& cands,
                                  const SelectionRule& rule) {
    if (w.size() != static_cast<Eigen::Index>(cands.size())) {
        throw DimensionError("select_edges: w has length " + std::to_string(w.size()) +
                             ", candidate set has " + std::to_string(cands.size()));
    }

    std::vector<std::size_t> keep;
    bool all_zero = false;
    if (rule.kind == SelectionRule::Kind::RelativeThreshold) {
        const double w_max = cands.empty() ? 0.0 : w.maxCoeff();
        const double cut = rule.tau * w_max;
        for (std::size_t d = 0; d < cands.size(); ++d) {
            if (w[static_cast<Eigen::Index>(d)] > cut) keep.push_back(d);
        }
    } else {
        if (rule.m > static_cast<int>(cands.size())) {
            throw InvalidSpecError("top-k selection m=" + std::to_string(rule.m) +
                                   " exceeds candidate count " + std::to_string(cands.size()));
        }
        std::vector<std::size_t> order(cands.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double wa = w[static_cast<Eigen::Index>(a)];
            const double wb = w[static_cast<Eigen::Index>(b)];
            if (wa != wb) return wa > wb;
            return a < b;
        });
        keep.assign(order.begin(), order.begin() + rule.m);
        std::sort(keep.begin(), keep.end());
        all_zero = cands.empty() ? false : w.maxCoeff() == 0.0;
        if (all_zero) detail::warn("top-k selection over an all-zero weight vector");
    }

    std::vector<Hyperedge> edges;
    std::vector<double> weights;
    edges.reserve(keep.size());
    weights.reserve(keep.size());
    for (std::size_t d : keep) {
        edges.push_back(cands[d]);
        weights.push_back(w[static_cast<Eigen::Index>(d)]);
    }
    return {Hypergraph(cands.num_nodes(), std::move(edges), std::move(weights)), all_zero};
}

}  // namespace hsls
