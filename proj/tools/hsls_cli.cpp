// Command-line pipeline: synth -> reduce/overlap -> learn -> eval, plus a
// config-driven bench harness. Stages communicate through files so each one
// is independently scriptable. Logs go to stderr; machine-readable output
// goes to the requested files.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsls/hsls.hpp"

namespace {

using namespace hsls;

std::vector<int> parse_int_list(const std::string& csv, const std::string& flag) {
    std::vector<int> out;
    for (const auto& field : io::detail::split(csv, ',')) {
        if (io::detail::trim(field).empty()) continue;
        long long v = 0;
        if (!io::detail::try_parse_long(field, v)) {
            throw InvalidSpecError(flag + ": expected a comma-separated integer list, got '" +
                                   csv + "'");
        }
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw InvalidSpecError(flag + ": empty list");
    return out;
}

std::string sanitize(const std::string& name) {
    std::string out = name;
    for (char& c : out) {
        if (c == ':' || c == '/' || c == ' ') c = '_';
    }
    return out;
}

struct SynthArgs {
    int nodes = 21;
    std::string cards = "3";
    std::size_t edges = 10;
    int obs = 250;
    std::uint64_t seed = 42;
    double noise = 1e-3;
    std::string out_structure;
    std::string out_signals;
};

int run_synth(const SynthArgs& args) {
    const CardinalitySpec spec(parse_int_list(args.cards, "--cards"));
    const Hypergraph truth = random_hypergraph(args.nodes, spec, args.edges, args.seed);
    const StarExpansion star = star_laplacian(truth, args.noise);
    const SignalMatrix X = sample_smooth_signals(star, args.obs, split_seed(args.seed, 1));
    io::write_structure(args.out_structure, truth);
    io::write_signals(args.out_signals, X);
    std::cerr << "synth: " << truth.num_edges() << " hyperedges over " << truth.num_nodes()
              << " nodes, " << X.num_observations() << " observations\n";
    return 0;
}

struct ReduceArgs {
    std::string signals;
    std::string cards;
    std::string neighbors;
    std::string out;
};

int run_reduce(const ReduceArgs& args) {
    const io::SignalsFile in = io::read_signals(args.signals);
    const CardinalitySpec spec(parse_int_list(args.cards, "--cards"),
                               parse_int_list(args.neighbors, "--neighbors"));
    const CandidateSet cands = reduce_candidates(in.signals, spec);
    io::write_structure(args.out,
                        Hypergraph(cands.num_nodes(), cands.candidates()));
    std::cerr << "reduce: " << cands.size() << " candidates (bound "
              << reduction_bound(cands.num_nodes(), spec) << ")\n";
    return 0;
}

struct OverlapArgs {
    std::string truth;
    std::string signals;
    std::string cards;
    int rmin = -1;
    int rmax = -1;
    std::string out_csv;
    std::string out_svg;
};

int run_overlap(const OverlapArgs& args) {
    const Hypergraph truth = io::read_structure(args.truth);
    const io::SignalsFile in = io::read_signals(args.signals);
    const CardinalitySpec cards(parse_int_list(args.cards, "--cards"));
    const int rmin = args.rmin >= 0 ? args.rmin : cards.max_card() - 1;
    const int rmax = args.rmax >= 0 ? args.rmax : in.signals.num_nodes() - 1;
    const auto rows = overlap_sweep(in.signals, truth, cards, rmin, rmax);
    io::write_overlap_csv(args.out_csv, rows, cards);
    if (!args.out_svg.empty()) io::write_overlap_svg(args.out_svg, rows);
    for (const auto& row : rows) {
        std::cerr << "overlap: r=" << row.r << " -> " << row.overlap_percent << "% ("
                  << row.num_candidates << " candidates)\n";
    }
    return 0;
}

struct LearnArgs {
    std::string signals;
    std::string candidates;
    std::string cards;
    std::string neighbors;
    std::string tv = "max-square";
    double alpha = 1.0;
    double beta = 1.0;
    double eta = 1e-9;
    int imax = 20000;
    double epsilon_frac = 0.5;
    std::string select = "rel:0.5";
    std::string out;
    std::string diag;
};

int run_learn(const LearnArgs& args) {
    const io::SignalsFile in = io::read_signals(args.signals);

    std::optional<CandidateSet> cands;
    if (!args.candidates.empty()) {
        const Hypergraph file = io::read_structure(args.candidates);
        if (file.num_nodes() != in.signals.num_nodes()) {
            throw DimensionError("candidate file is over " + std::to_string(file.num_nodes()) +
                                 " nodes, signals over " +
                                 std::to_string(in.signals.num_nodes()));
        }
        cands = CandidateSet(file.num_nodes(), file.edges());
    } else {
        if (args.cards.empty() || args.neighbors.empty()) {
            throw InvalidSpecError("learn needs --candidates or both --cards and --neighbors");
        }
        const CardinalitySpec spec(parse_int_list(args.cards, "--cards"),
                                   parse_int_list(args.neighbors, "--neighbors"));
        cands = reduce_candidates(in.signals, spec);
    }
    if (cands->empty()) throw InvalidSpecError("candidate set is empty");

    const TvKind kind = TvKind::parse(args.tv);
    const DistanceVector z = distance_vector(in.signals, *cands, kind);
    const SelectionMatrix S = build_selection_matrix(*cands);

    HslsParams params;
    params.alpha = args.alpha;
    params.beta = args.beta;
    params.eta = args.eta;
    params.i_max = args.imax;
    params.epsilon_frac = args.epsilon_frac;

    const SolverState state = solve(z, S, params);
    const EdgeSelection selection =
        select_edges(state.w, *cands, SelectionRule::parse(args.select));

    io::write_structure(args.out, selection.hypergraph);
    if (in.labels) io::write_labels(args.out + ".labels", *in.labels);
    if (!args.diag.empty()) io::write_solver_diagnostics_csv(args.diag, state);

    std::cerr << "learn: " << (state.converged ? "converged" : "iteration cap") << " after "
              << state.iterations << " iterations; kept " << selection.hypergraph.num_edges()
              << " of " << cands->size() << " candidates\n";
    return 0;
}

struct EvalArgs {
    std::string learned;
    std::string truth;
    std::string signals;
    std::string tv = "all";
    std::string out;
};

int run_eval(const EvalArgs& args) {
    const Hypergraph learned = io::read_structure(args.learned);
    const io::SignalsFile in = io::read_signals(args.signals);
    std::optional<Hypergraph> truth;
    if (!args.truth.empty()) truth = io::read_structure(args.truth);

    if (args.tv != "all") TvKind::parse(args.tv);  // validate the flag early

    std::vector<RunReport> reports;
    {
        RunReport report;
        report.method = "learned";
        report.edge_count = learned.num_edges();
        const Hypergraph structure = learned.unweighted();
        for (TvKind kind : kAllTvKinds) {
            report.tv_by_kind[static_cast<std::size_t>(kind.index())] =
                total_variation(structure, in.signals, kind);
        }
        if (truth) {
            const SetMetrics m = set_metrics(learned, *truth);
            report.has_truth_metrics = true;
            report.precision = m.precision;
            report.recall = m.recall;
            report.f1 = m.f1;
        }
        reports.push_back(report);
    }
    if (truth) {
        RunReport report;
        report.method = "truth";
        report.edge_count = truth->num_edges();
        const Hypergraph structure = truth->unweighted();
        for (TvKind kind : kAllTvKinds) {
            report.tv_by_kind[static_cast<std::size_t>(kind.index())] =
                total_variation(structure, in.signals, kind);
        }
        reports.push_back(report);
    }

    io::write_table_text(std::cout, io::report_table_rows(reports));
    if (!args.out.empty()) io::write_reports_csv(args.out, reports);
    return 0;
}

struct BenchArgs {
    std::string config;
};

int run_bench(const BenchArgs& args) {
    const io::Config cfg = io::load_config(args.config);
    const CardinalitySpec spec = cfg.cardinality_spec();

    std::optional<Hypergraph> truth;
    std::optional<SignalMatrix> signals;
    if (!cfg.signals.empty()) {
        signals = io::read_signals(cfg.signals).signals;
        if (cfg.truth.empty()) {
            throw InvalidSpecError("bench with external signals needs a truth structure");
        }
        truth = io::read_structure(cfg.truth);
    } else {
        truth = random_hypergraph(cfg.nodes, CardinalitySpec(cfg.cards), cfg.edges, cfg.seed);
        const StarExpansion star = star_laplacian(*truth, cfg.noise);
        signals = sample_smooth_signals(star, cfg.obs, split_seed(cfg.seed, 1));
        io::write_structure(cfg.out_prefix + "_truth.hsls", *truth);
        io::write_signals(cfg.out_prefix + "_signals.csv", *signals);
    }

    SelectionRule selection = SelectionRule::top_k(static_cast<int>(truth->num_edges()));
    if (cfg.select != "topk:truth") selection = SelectionRule::parse(cfg.select);

    const std::vector<RunReport> reports = compare_methods(
        *signals, *truth, spec, cfg.methods, cfg.grid(), cfg.solver_params(), selection);

    io::write_reports_csv(cfg.out_prefix + "_reports.csv", reports);
    {
        auto out = io::detail::open_out(cfg.out_prefix + "_reports.txt");
        io::write_table_text(out, io::report_table_rows(reports));
    }
    for (const auto& report : reports) {
        if (report.learned) {
            io::write_structure(cfg.out_prefix + "_" + sanitize(report.method) + ".hsls",
                                *report.learned);
        }
    }
    io::write_table_text(std::cout, io::report_table_rows(reports));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypergraph structure learning from smooth node signals"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "generate a ground truth and smooth signals");
    synth->add_option("--nodes", synth_args.nodes, "node count")->capture_default_str();
    synth->add_option("--cards", synth_args.cards, "cardinalities, e.g. 3 or 2,3")
        ->capture_default_str();
    synth->add_option("--edges", synth_args.edges, "hyperedge count")->capture_default_str();
    synth->add_option("--obs", synth_args.obs, "observation count")->capture_default_str();
    synth->add_option("--seed", synth_args.seed, "random seed")->capture_default_str();
    synth->add_option("--noise", synth_args.noise, "diagonal noise on the star Laplacian")
        ->capture_default_str();
    synth->add_option("--out-structure", synth_args.out_structure, "truth structure file")
        ->required();
    synth->add_option("--out-signals", synth_args.out_signals, "signals CSV")->required();

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "nearest-neighbor candidate pruning");
    reduce->add_option("--signals", reduce_args.signals, "signals CSV")->required();
    reduce->add_option("--cards", reduce_args.cards, "cardinalities")->required();
    reduce->add_option("--neighbors", reduce_args.neighbors, "per-cardinality budgets")
        ->required();
    reduce->add_option("--out", reduce_args.out, "candidate set file")->required();

    OverlapArgs overlap_args;
    auto* overlap = app.add_subcommand("overlap", "truth/candidate overlap sweep");
    overlap->add_option("--truth", overlap_args.truth, "truth structure file")->required();
    overlap->add_option("--signals", overlap_args.signals, "signals CSV")->required();
    overlap->add_option("--cards", overlap_args.cards, "cardinalities")->required();
    overlap->add_option("--rmin", overlap_args.rmin, "first budget (default max(k)-1)");
    overlap->add_option("--rmax", overlap_args.rmax, "last budget (default N-1)");
    overlap->add_option("--out-csv", overlap_args.out_csv, "sweep CSV")->required();
    overlap->add_option("--out-svg", overlap_args.out_svg, "bar chart SVG");

    LearnArgs learn_args;
    auto* learn = app.add_subcommand("learn", "solve for candidate weights and select edges");
    learn->add_option("--signals", learn_args.signals, "signals CSV")->required();
    learn->add_option("--candidates", learn_args.candidates, "candidate set file");
    learn->add_option("--cards", learn_args.cards, "cardinalities (with --neighbors)");
    learn->add_option("--neighbors", learn_args.neighbors, "per-cardinality budgets");
    learn->add_option("--tv", learn_args.tv, "sum-square|sum-abs|max-abs|max-square")
        ->capture_default_str();
    learn->add_option("--alpha", learn_args.alpha, "degree-positivity strength")
        ->capture_default_str();
    learn->add_option("--beta", learn_args.beta, "sparsity strength")->capture_default_str();
    learn->add_option("--eta", learn_args.eta, "stopping threshold")->capture_default_str();
    learn->add_option("--imax", learn_args.imax, "iteration cap")->capture_default_str();
    learn->add_option("--epsilon-frac", learn_args.epsilon_frac,
                      "position inside the admissible step interval")
        ->capture_default_str();
    learn->add_option("--select", learn_args.select, "topk:<m> or rel:<tau>")
        ->capture_default_str();
    learn->add_option("--out", learn_args.out, "learned structure file")->required();
    learn->add_option("--diag", learn_args.diag, "solver diagnostics CSV");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "metrics and total-variation report");
    eval->add_option("--learned", eval_args.learned, "learned structure file")->required();
    eval->add_option("--truth", eval_args.truth, "truth structure file");
    eval->add_option("--signals", eval_args.signals, "signals CSV")->required();
    eval->add_option("--tv", eval_args.tv, "a single kind or 'all'")->capture_default_str();
    eval->add_option("--out", eval_args.out, "report CSV");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "config-driven method comparison");
    bench->add_option("--config", bench_args.config, "key=value config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (synth->parsed()) return run_synth(synth_args);
        if (reduce->parsed()) return run_reduce(reduce_args);
        if (overlap->parsed()) return run_overlap(overlap_args);
        if (learn->parsed()) return run_learn(learn_args);
        if (eval->parsed()) return run_eval(eval_args);
        if (bench->parsed()) return run_bench(bench_args);
    } catch (const DivergenceError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
