#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hsls/errors.hpp"
#include "hsls/eval.hpp"
#include "hsls/hypergraph.hpp"
#include "hsls/reduction.hpp"
#include "hsls/smoothness.hpp"
#include "hsls/solver.hpp"

namespace hsls::io {

inline constexpr std::string_view kFormatHeader = "# hsls-format v1";

/// Shortest decimal that round-trips the exact double value.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

inline bool try_parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    const char* first = t.data();
    const char* last = t.data() + t.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && !t.empty();
}

inline bool try_parse_long(const std::string& s, long long& out) {
    const std::string t = trim(s);
    const char* first = t.data();
    const char* last = t.data() + t.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && !t.empty();
}

inline double require_double(const std::string& field, const std::string& file, long line,
                             const char* what) {
    double v = 0.0;
    if (!try_parse_double(field, v)) {
        throw ParseError(file, line, std::string("expected ") + what + ", got '" + field + "'");
    }
    return v;
}

inline long long require_long(const std::string& field, const std::string& file, long line,
                              const char* what) {
    long long v = 0;
    if (!try_parse_long(field, v)) {
        throw ParseError(file, line, std::string("expected ") + what + ", got '" + field + "'");
    }
    return v;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write to " + path.string());
    return out;
}

}  // namespace detail

/// Bijection between external string labels and dense node indices, ordered
/// by first appearance.
class LabelTable {
public:
    LabelTable() = default;

    explicit LabelTable(std::vector<std::string> labels) : labels_(std::move(labels)) {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], static_cast<int>(i)).second) {
                throw InvalidSpecError("duplicate node label '" + labels_[i] + "'");
            }
        }
    }

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label_of(int index) const { return labels_.at(static_cast<std::size_t>(index)); }

    std::optional<int> index_of(const std::string& label) const {
        const auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

struct SignalsFile {
    SignalMatrix signals;
    std::optional<LabelTable> labels;
};

/// CSV of node signals, one row per node: an optional leading label column
/// (detected by a non-numeric first field) followed by the observations.
inline SignalsFile read_signals(const std::filesystem::path& path) {
    const auto lines = detail::read_lines(path);
    const std::string file = path.string();

    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    bool labeled = false;
    bool first_row = true;

    for (std::size_t li = 0; li < lines.size(); ++li) {
        const long line_no = static_cast<long>(li) + 1;
        const std::string& line = lines[li];
        if (line.empty() || line[0] == '#') continue;
        const auto fields = detail::split(line, ',');

        std::size_t value_start = 0;
        if (first_row) {
            double probe = 0.0;
            labeled = !detail::try_parse_double(fields[0], probe);
            first_row = false;
        }
        if (labeled) {
            labels.push_back(detail::trim(fields[0]));
            value_start = 1;
        }
        if (fields.size() <= value_start) {
            throw ParseError(file, line_no, "row has no signal values");
        }

        std::vector<double> row;
        row.reserve(fields.size() - value_start);
        for (std::size_t f = value_start; f < fields.size(); ++f) {
            const double v = detail::require_double(fields[f], file, line_no, "a number");
            if (!std::isfinite(v)) {
                throw ParseError(file, line_no, "non-finite value '" + fields[f] + "'");
            }
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError(file, line_no,
                             "ragged row: " + std::to_string(row.size()) + " values, expected " +
                                 std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }

    if (rows.size() < 2) {
        throw ParseError(file, static_cast<long>(lines.size()),
                         "need at least 2 node rows, got " + std::to_string(rows.size()));
    }
    Eigen::MatrixXd data(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    SignalsFile out{SignalMatrix(std::move(data)), std::nullopt};
    if (labeled) out.labels = LabelTable(std::move(labels));
    return out;
}

inline void write_signals(const std::filesystem::path& path, const SignalMatrix& X,
                          const LabelTable* labels = nullptr) {
    if (labels && static_cast<int>(labels->size()) != X.num_nodes()) {
        throw DimensionError("write_signals: label table size does not match node count");
    }
    auto out = detail::open_out(path);
    out << kFormatHeader << "\n";
    for (int i = 0; i < X.num_nodes(); ++i) {
        if (labels) out << labels->label_of(i) << ",";
        for (int p = 0; p < X.num_observations(); ++p) {
            if (p) out << ",";
            out << format_double(X.data()(i, p));
        }
        out << "\n";
    }
}

/// Structure file: "# nodes N" header, then one hyperedge per line as
/// comma-separated node indices with an optional tab-separated weight.
/// Unsorted indices are accepted and canonicalized; duplicate edges merge
/// with a warning, keeping the larger weight.
inline Hypergraph read_structure(const std::filesystem::path& path) {
    const auto lines = detail::read_lines(path);
    const std::string file = path.string();

    int declared_nodes = -1;
    std::vector<Hyperedge> edges;
    std::vector<double> weights;
    bool any_weight = false;
    int max_node = -1;

    for (std::size_t li = 0; li < lines.size(); ++li) {
        const long line_no = static_cast<long>(li) + 1;
        const std::string& line = lines[li];
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream header(line.substr(1));
            std::string word;
            header >> word;
            if (word == "nodes") {
                long long n = 0;
                if (header >> n) declared_nodes = static_cast<int>(n);
            }
            continue;
        }

        const auto tab = line.find('\t');
        const std::string index_part = tab == std::string::npos ? line : line.substr(0, tab);
        double weight = 1.0;
        if (tab != std::string::npos) {
            weight = detail::require_double(line.substr(tab + 1), file, line_no, "a weight");
            if (!(weight >= 0.0)) throw ParseError(file, line_no, "negative hyperedge weight");
            any_weight = true;
        }

        std::vector<int> nodes;
        for (const auto& field : detail::split(index_part, ',')) {
            const long long v = detail::require_long(field, file, line_no, "a node index");
            if (v < 0) throw ParseError(file, line_no, "negative node index");
            nodes.push_back(static_cast<int>(v));
            max_node = std::max(max_node, static_cast<int>(v));
        }
        try {
            edges.emplace_back(std::move(nodes));
        } catch (const InvalidSpecError& err) {
            throw ParseError(file, line_no, err.what());
        }
        weights.push_back(weight);
    }

    const int num_nodes = declared_nodes >= 0 ? declared_nodes : max_node + 1;
    if (num_nodes < 1) {
        throw ParseError(file, static_cast<long>(lines.size()),
                         "structure file has no node count and no edges");
    }
    if (max_node >= num_nodes) {
        throw ParseError(file, 0,
                         "node index " + std::to_string(max_node) +
                             " out of range for declared nodes " + std::to_string(num_nodes));
    }

    // Duplicate detection for the warning; the constructor merges regardless.
    std::vector<Hyperedge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        hsls::detail::warn(file + ": duplicate hyperedges merged (max weight kept)");
    }

    if (any_weight) return Hypergraph(num_nodes, std::move(edges), std::move(weights));
    return Hypergraph(num_nodes, std::move(edges));
}

inline void write_structure(const std::filesystem::path& path, const Hypergraph& H) {
    auto out = detail::open_out(path);
    out << kFormatHeader << "\n";
    out << "# nodes " << H.num_nodes() << "\n";
    for (std::size_t d = 0; d < H.num_edges(); ++d) {
        const auto& nodes = H.edges()[d].nodes();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (i) out << ",";
            out << nodes[i];
        }
        if (H.has_weights()) out << "\t" << format_double(H.weight(d));
        out << "\n";
    }
}

/// Incidence matrix as CSV: N rows, one column per hyperedge. Binary for an
/// unweighted structure; member cells carry the edge weight otherwise.
inline void write_incidence(const std::filesystem::path& path, const Hypergraph& H) {
    auto out = detail::open_out(path);
    out << kFormatHeader << "\n";
    for (int i = 0; i < H.num_nodes(); ++i) {
        for (std::size_t j = 0; j < H.num_edges(); ++j) {
            if (j) out << ",";
            if (H.edges()[j].contains(i)) {
                out << (H.has_weights() ? format_double(H.weight(j)) : "1");
            } else {
                out << "0";
            }
        }
        out << "\n";
    }
}

/// Full experiment configuration, one key=value per line. Every key has a
/// default; unknown keys are errors.
struct Config {
    std::uint64_t seed = 42;
    int nodes = 21;
    std::vector<int> cards{3};
    std::size_t edges = 10;
    int obs = 250;
    double noise = 1e-3;
    std::vector<int> neighbors;  // empty: default to r_l = k_l
    std::vector<double> alpha_grid = GridSpec::decades();
    std::vector<double> beta_grid = GridSpec::decades();
    TvKind tv = TvKind::max_square();
    std::vector<MethodSpec> methods = {MethodSpec::hsls(TvKind::max_square()),
                                       MethodSpec::hgsi(), MethodSpec::knn_direct()};
    double eta = 1e-9;
    int imax = 20000;
    double epsilon_frac = 0.5;
    std::string select = "topk:truth";
    std::string signals;      // path; empty means synthesize
    std::string truth;        // path; empty means synthesize
    std::string out_prefix = "bench";

    CardinalitySpec cardinality_spec() const {
        if (neighbors.empty()) {
            return CardinalitySpec(cards, cards);  // r_l = k_l
        }
        return CardinalitySpec(cards, neighbors);
    }

    HslsParams solver_params() const {
        HslsParams p;
        p.eta = eta;
        p.i_max = imax;
        p.epsilon_frac = epsilon_frac;
        return p;
    }

    GridSpec grid() const {
        GridSpec g;
        g.alpha_grid = alpha_grid;
        g.beta_grid = beta_grid;
        g.tv_kind = tv;
        return g;
    }
};

inline Config load_config(const std::filesystem::path& path) {
    const auto lines = detail::read_lines(path);
    const std::string file = path.string();
    Config cfg;

    const auto parse_int_list = [&](const std::string& value, long line_no) {
        std::vector<int> out;
        for (const auto& field : detail::split(value, ',')) {
            if (detail::trim(field).empty()) continue;
            out.push_back(static_cast<int>(detail::require_long(field, file, line_no, "an integer")));
        }
        return out;
    };
    const auto parse_double_list = [&](const std::string& value, long line_no) {
        std::vector<double> out;
        for (const auto& field : detail::split(value, ',')) {
            if (detail::trim(field).empty()) continue;
            out.push_back(detail::require_double(field, file, line_no, "a number"));
        }
        return out;
    };

    for (std::size_t li = 0; li < lines.size(); ++li) {
        const long line_no = static_cast<long>(li) + 1;
        const std::string& raw = lines[li];
        const std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(file, line_no, "expected key=value, got '" + line + "'");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));

        try {
            if (key == "seed") {
                const long long v = detail::require_long(value, file, line_no, "an integer");
                if (v < 0) throw InvalidSpecError("seed must be >= 0");
                cfg.seed = static_cast<std::uint64_t>(v);
            } else if (key == "nodes") {
                cfg.nodes = static_cast<int>(detail::require_long(value, file, line_no, "an integer"));
                if (cfg.nodes < 2) throw InvalidSpecError("nodes must be >= 2");
            } else if (key == "cards") {
                cfg.cards = parse_int_list(value, line_no);
            } else if (key == "edges") {
                const long long v = detail::require_long(value, file, line_no, "an integer");
                if (v < 1) throw InvalidSpecError("edges must be >= 1");
                cfg.edges = static_cast<std::size_t>(v);
            } else if (key == "obs") {
                cfg.obs = static_cast<int>(detail::require_long(value, file, line_no, "an integer"));
                if (cfg.obs < 1) throw InvalidSpecError("obs must be >= 1");
            } else if (key == "noise") {
                cfg.noise = detail::require_double(value, file, line_no, "a number");
                if (!(cfg.noise >= 0.0)) throw InvalidSpecError("noise must be >= 0");
            } else if (key == "neighbors") {
                cfg.neighbors = parse_int_list(value, line_no);
            } else if (key == "alpha_grid") {
                cfg.alpha_grid = parse_double_list(value, line_no);
                for (double a : cfg.alpha_grid) {
                    if (!(a > 0.0)) throw InvalidSpecError("alpha_grid values must be > 0");
                }
            } else if (key == "beta_grid") {
                cfg.beta_grid = parse_double_list(value, line_no);
                for (double b : cfg.beta_grid) {
                    if (!(b > 0.0)) throw InvalidSpecError("beta_grid values must be > 0");
                }
            } else if (key == "tv") {
                cfg.tv = TvKind::parse(value);
            } else if (key == "methods") {
                cfg.methods.clear();
                for (const auto& field : detail::split(value, ',')) {
                    cfg.methods.push_back(MethodSpec::parse(detail::trim(field)));
                }
                if (cfg.methods.empty()) throw InvalidSpecError("methods list is empty");
            } else if (key == "eta") {
                cfg.eta = detail::require_double(value, file, line_no, "a number");
                if (!(cfg.eta > 0.0)) throw InvalidSpecError("eta must be > 0");
            } else if (key == "imax") {
                cfg.imax = static_cast<int>(detail::require_long(value, file, line_no, "an integer"));
                if (cfg.imax < 1) throw InvalidSpecError("imax must be >= 1");
            } else if (key == "epsilon_frac") {
                cfg.epsilon_frac = detail::require_double(value, file, line_no, "a number");
                if (!(cfg.epsilon_frac > 0.0) || !(cfg.epsilon_frac < 1.0)) {
                    throw InvalidSpecError("epsilon_frac must be in (0, 1)");
                }
            } else if (key == "select") {
                if (value != "topk:truth") SelectionRule::parse(value);  // syntax check
                cfg.select = value;
            } else if (key == "signals") {
                cfg.signals = value;
            } else if (key == "truth") {
                cfg.truth = value;
            } else if (key == "out_prefix") {
                cfg.out_prefix = value;
            } else {
                throw ParseError(file, line_no, "unknown key '" + key + "'");
            }
        } catch (const InvalidSpecError& err) {
            throw ParseError(file, line_no, "key '" + key + "': " + err.what());
        } catch (const BudgetError& err) {
            throw ParseError(file, line_no, "key '" + key + "': " + err.what());
        }
    }
    return cfg;
}

inline void write_labels(const std::filesystem::path& path, const LabelTable& labels) {
    auto out = detail::open_out(path);
    out << kFormatHeader << "\n";
    for (const auto& label : labels.labels()) out << label << "\n";
}

inline LabelTable read_labels(const std::filesystem::path& path) {
    std::vector<std::string> labels;
    for (const auto& line : detail::read_lines(path)) {
        if (line.empty() || line[0] == '#') continue;
        labels.push_back(line);
    }
    return LabelTable(std::move(labels));
}

// ---------------------------------------------------------------------------
// Report tables
// ---------------------------------------------------------------------------

inline constexpr std::string_view kReportHeader =
    "method,tv_kind,alpha,beta,has_truth,precision,recall,f1,tv_sum_square,tv_sum_abs,"
    "tv_max_abs,tv_max_square,edges,wall_seconds,iterations,converged,diverged,notes";

inline void write_reports_csv(const std::filesystem::path& path,
                              const std::vector<RunReport>& reports) {
    auto out = detail::open_out(path);
    out << kFormatHeader << "\n" << kReportHeader << "\n";
    for (const auto& r : reports) {
        out << r.method << "," << r.tv_kind.name() << "," << format_double(r.alpha) << ","
            << format_double(r.beta) << "," << (r.has_truth_metrics ? 1 : 0) << ","
            << format_double(r.precision) << "," << format_double(r.recall) << ","
            << format_double(r.f1);
        for (double tv : r.tv_by_kind) out << "," << format_double(tv);
        out << "," << r.edge_count << "," << format_double(r.wall_seconds) << ","
            << r.iterations << "," << (r.converged ? 1 : 0) << "," << (r.diverged ? 1 : 0)
            << "," << r.notes << "\n";
    }
}

inline std::vector<RunReport> read_reports_csv(const std::filesystem::path& path) {
    const auto lines = detail::read_lines(path);
    const std::string file = path.string();
    std::vector<RunReport> reports;
    bool seen_header = false;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const long line_no = static_cast<long>(li) + 1;
        const std::string& line = lines[li];
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            if (line != kReportHeader) throw ParseError(file, line_no, "unexpected report header");
            seen_header = true;
            continue;
        }
        const auto f = detail::split(line, ',');
        if (f.size() != 18) {
            throw ParseError(file, line_no, "expected 18 fields, got " + std::to_string(f.size()));
        }
        RunReport r;
        r.method = f[0];
        r.tv_kind = TvKind::parse(f[1]);
        r.alpha = detail::require_double(f[2], file, line_no, "alpha");
        r.beta = detail::require_double(f[3], file, line_no, "beta");
        r.has_truth_metrics = detail::require_long(f[4], file, line_no, "flag") != 0;
        r.precision = detail::require_double(f[5], file, line_no, "precision");
        r.recall = detail::require_double(f[6], file, line_no, "recall");
        r.f1 = detail::require_double(f[7], file, line_no, "f1");
        for (int k = 0; k < 4; ++k) {
            r.tv_by_kind[static_cast<std::size_t>(k)] =
                detail::require_double(f[static_cast<std::size_t>(8 + k)], file, line_no, "tv");
        }
        r.edge_count = static_cast<std::size_t>(detail::require_long(f[12], file, line_no, "edges"));
        r.wall_seconds = detail::require_double(f[13], file, line_no, "wall_seconds");
        r.iterations = static_cast<int>(detail::require_long(f[14], file, line_no, "iterations"));
        r.converged = detail::require_long(f[15], file, line_no, "flag") != 0;
        r.diverged = detail::require_long(f[16], file, line_no, "flag") != 0;
        r.notes = f[17];
        reports.push_back(std::move(r));
    }
    if (!seen_header) throw ParseError(file, 0, "missing report header");
    return reports;
}

/// Aligned plain-text table; the first row is the header.
inline void write_table_text(std::ostream& out,
                             const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) {
                out << std::string(width[c] - row[c].size() + 2, ' ');
            }
        }
        out << "\n";
    }
}

inline std::vector<std::vector<std::string>> report_table_rows(
    const std::vector<RunReport>& reports) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"method", "alpha", "beta", "precision", "recall", "f1", "tv(sum-sq)",
                    "tv(sum-abs)", "tv(max-abs)", "tv(max-sq)", "edges", "iters", "notes"});
    for (const auto& r : reports) {
        rows.push_back({r.method, format_double(r.alpha), format_double(r.beta),
                        format_double(r.precision), format_double(r.recall), format_double(r.f1),
                        format_double(r.tv_by_kind[0]), format_double(r.tv_by_kind[1]),
                        format_double(r.tv_by_kind[2]), format_double(r.tv_by_kind[3]),
                        std::to_string(r.edge_count), std::to_string(r.iterations), r.notes});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Overlap sweep outputs
// ---------------------------------------------------------------------------

inline void write_overlap_csv(const std::filesystem::path& path,
                              const std::vector<OverlapRow>& rows,
                              const CardinalitySpec& cards) {
    std::string schedule;
    for (std::size_t l = 0; l < cards.size(); ++l) {
        if (l) schedule += ';';
        schedule += std::to_string(cards.cards()[l]);
    }
    auto out = detail::open_out(path);
    out << kFormatHeader << "\n";
    out << "r,cardinality_schedule,overlap_percent,num_candidates\n";
    for (const auto& row : rows) {
        out << row.r << "," << schedule << "," << format_double(row.overlap_percent) << ","
            << row.num_candidates << "\n";
    }
}

/// Bar chart of an overlap sweep; bars that reach 100% are green, the rest
/// red.
inline void write_overlap_svg(const std::filesystem::path& path,
                              const std::vector<OverlapRow>& rows) {
    const int width = 640;
    const int height = 400;
    const int margin_left = 56;
    const int margin_bottom = 48;
    const int margin_top = 24;
    const int margin_right = 16;
    const double plot_w = width - margin_left - margin_right;
    const double plot_h = height - margin_top - margin_bottom;

    auto out = detail::open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // y axis with gridlines every 25%
    for (int pct = 0; pct <= 100; pct += 25) {
        const double y = margin_top + plot_h * (1.0 - pct / 100.0);
        out << "<line x1=\"" << margin_left << "\" y1=\"" << y << "\" x2=\""
            << width - margin_right << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << margin_left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">" << pct
            << "</text>\n";
    }

    const std::size_t n = rows.size();
    if (n > 0) {
        const double slot = plot_w / static_cast<double>(n);
        const double bar_w = slot * 0.7;
        for (std::size_t i = 0; i < n; ++i) {
            const double h = plot_h * rows[i].overlap_percent / 100.0;
            const double x = margin_left + slot * static_cast<double>(i) + (slot - bar_w) / 2.0;
            const double y = margin_top + plot_h - h;
            const bool full = rows[i].overlap_percent >= 100.0;
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w
                << "\" height=\"" << h << "\" fill=\"" << (full ? "#2e8b57" : "#c0392b")
                << "\"/>\n";
            out << "<text x=\"" << x + bar_w / 2.0 << "\" y=\"" << height - margin_bottom + 16
                << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
                << rows[i].r << "</text>\n";
        }
    }
    out << "<text x=\"" << margin_left + plot_w / 2.0 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
           "nearest neighbors r</text>\n";
    out << "<text x=\"16\" y=\"" << margin_top + plot_h / 2.0
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 16 "
        << margin_top + plot_h / 2.0 << ")\">overlap %</text>\n";
    out << "</svg>\n";
}

inline void write_solver_diagnostics_csv(const std::filesystem::path& path,
                                         const SolverState& state) {
    auto out = detail::open_out(path);
    out << kFormatHeader << "\n";
    out << "iteration,primal_residual,dual_residual,objective\n";
    out << "0,,," << format_double(state.objective_trace.at(0)) << "\n";
    for (std::size_t i = 0; i < state.primal_residuals.size(); ++i) {
        out << (i + 1) << "," << format_double(state.primal_residuals[i]) << ","
            << format_double(state.dual_residuals[i]) << ","
            << format_double(state.objective_trace.at(i + 1)) << "\n";
    }
}

inline void write_tv_comparison_csv(const std::filesystem::path& path,
                                    const std::vector<TvComparisonRow>& rows, TvKind kind) {
    auto out = detail::open_out(path);
    out << kFormatHeader << "\n";
    out << "structure,signal,tv_kind,total_variation,edges\n";
    for (const auto& row : rows) {
        out << row.structure << "," << row.signal << "," << kind.name() << ","
            << format_double(row.total_variation) << "," << row.edge_count << "\n";
    }
}

}  // namespace hsls::io
