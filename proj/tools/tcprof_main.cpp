// tcprof: profile known drug-target combinations in signed signaling networks.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcprof/analysis.hpp"
#include "tcprof/baselines.hpp"
#include "tcprof/error.hpp"
#include "tcprof/graph.hpp"
#include "tcprof/io.hpp"
#include "tcprof/pen.hpp"
#include "tcprof/perturb.hpp"
#include "tcprof/pipeline.hpp"
#include "tcprof/ppr.hpp"
#include "tcprof/profiler.hpp"
#include "tcprof/report.hpp"
#include "tcprof/subnet.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tcprof;

namespace {

struct Common {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    int precision = 4;
};

struct NetworkArgs {
    std::string network;
    std::string oncogenes;
    std::string drug_targets;
};

struct WalkArgs {
    double alpha = 0.2;
    double tolerance = 1e-9;
    double epsilon = kDefaultEpsilon;
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void add_walk_options(CLI::App* cmd, WalkArgs& walk, bool with_epsilon) {
    cmd->add_option("--alpha", walk.alpha, "Walk termination probability")->capture_default_str();
    cmd->add_option("--tol", walk.tolerance, "L1 residual tolerance")->capture_default_str();
    if (with_epsilon) cmd->add_option("--epsilon", walk.epsilon, "PEN distance log guard")->capture_default_str();
}

AnalysisParams analysis_params(const WalkArgs& walk, const std::string& measure, unsigned k, unsigned buckets,
                               const std::vector<double>& m_levels, const std::string& orientation) {
    AnalysisParams p;
    p.ppr.alpha = walk.alpha;
    p.ppr.tolerance = walk.tolerance;
    p.epsilon = walk.epsilon;
    p.measure = parse_measure(measure);
    p.k = k;
    p.histogram.n_bucket = buckets;
    p.histogram.m_levels = m_levels;
    if (orientation == "rest-minus-genes")
        p.orientation = DiffOrientation::RestMinusGenes;
    else if (orientation == "genes-minus-rest")
        p.orientation = DiffOrientation::GenesMinusRest;
    else if (orientation != "default")
        throw ValidationError("orientation must be default, rest-minus-genes or genes-minus-rest", "orientation");
    return p;
}

std::string matrix_csv(const DenseMatrix& m, const SignalingNetwork& net, std::optional<NodeId> only_source,
                       const char* value_column, int precision) {
    std::string out = std::string("source,target,") + value_column + "\n";
    for (std::size_t s = 0; s < m.size(); ++s) {
        if (only_source && only_source->index() != s) continue;
        for (std::size_t t = 0; t < m.size(); ++t)
            out += net.symbols()[s] + ',' + net.symbols()[t] + ',' + format_fixed(m(s, t), precision) + '\n';
    }
    return out;
}

std::optional<NodeId> resolve_source(const SignalingNetwork& net, const std::string& symbol) {
    if (symbol.empty()) return std::nullopt;
    const auto id = net.find(symbol);
    if (!id) throw ValidationError("source '" + symbol + "' is not a network node", "source");
    return id;
}

std::vector<std::uint64_t> parse_u64_list(const std::vector<std::string>& items) {
    std::vector<std::uint64_t> out;
    for (const auto& s : items) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(s, &used));
            if (used != s.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw ValidationError("not an unsigned integer: " + s, "seeds");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Influence-driven profiling of drug-target combinations in signaling networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    Common common;
    app.add_option("--threads", common.threads, "Worker threads")->capture_default_str();
    app.add_option("--precision", common.precision, "Decimals in CSV/text reports")->capture_default_str();

    std::function<void()> action;

    // build-subnet
    NetworkArgs subnet_args;
    unsigned subnet_d = 5;
    std::string subnet_out = "subnet";
    {
        auto* cmd = app.add_subcommand("build-subnet", "Extract the target-aware subnetwork");
        cmd->add_option("--network", subnet_args.network, "Network TSV")->required();
        cmd->add_option("--oncogenes", subnet_args.oncogenes, "Gene list")->required();
        cmd->add_option("--drug-targets", subnet_args.drug_targets, "Drug-target TSV")->required();
        cmd->add_option("--d", subnet_d, "Path length threshold (edges, exclusive)")->capture_default_str();
        cmd->add_option("--out-dir", subnet_out, "Output directory")->capture_default_str();
        cmd->callback([&] {
            action = [&] {
                const auto in = prepare_inputs(subnet_args.network, subnet_args.oncogenes, subnet_args.drug_targets,
                                               subnet_d);
                const fs::path out(subnet_out);
                write_network(in.subnet, out / "subnet.tsv");
                const auto summary = subnet_summary_json(in, subnet_d);
                write_text_file(out / "subnet_summary.json", dump(summary));
                write_text_file(out / "unresolved.json", unresolved_report_json(in.full_annotations));
                std::cout << dump(summary);
            };
        });
    }

    // ppr / pen
    std::string matrix_network, matrix_csv_path, matrix_source, matrix_cache;
    WalkArgs matrix_walk;
    for (const bool pen : {false, true}) {
        auto* cmd = app.add_subcommand(pen ? "pen" : "ppr",
                                       pen ? "All-pairs PEN distances" : "Exact personalized PageRank");
        cmd->add_option("--network", matrix_network, "Network TSV")->required();
        add_walk_options(cmd, matrix_walk, pen);
        cmd->add_option("--source", matrix_source, "Emit only this source row");
        cmd->add_option("--csv", matrix_csv_path, "CSV output (default stdout)");
        cmd->add_option("--cache-dir", matrix_cache, "Also store the binary matrix cache here");
        cmd->callback([&, pen] {
            action = [&, pen] {
                const auto net = load_network(matrix_network).network;
                const Executor exec(common.threads);
                const auto source = resolve_source(net, matrix_source);
                PprParams params{matrix_walk.alpha, matrix_walk.tolerance};
                if (!pen) {
                    if (source) {
                        const auto row = ppr_single_source(net, *source, params);
                        DenseMatrix m(net.node_count());
                        std::copy(row.values.begin(), row.values.end(), m.row(source->index()).begin());
                        emit(matrix_csv_path, matrix_csv(m, net, source, "ppr", common.precision));
                        return;
                    }
                    const auto ppr = matrix_cache.empty() ? ppr_all_pairs(net, params, exec)
                                                          : cached_ppr(net, params, matrix_cache, exec);
                    emit(matrix_csv_path, matrix_csv(ppr.values, net, std::nullopt, "ppr", common.precision));
                    return;
                }
                const auto ppr = matrix_cache.empty() ? ppr_all_pairs(net, params, exec)
                                                      : cached_ppr(net, params, matrix_cache, exec);
                const auto pm = pen_matrix(ppr, net, matrix_walk.epsilon);
                if (!matrix_cache.empty()) {
                    const MatrixCacheKey key{net.digest(), params.alpha, params.tolerance, matrix_walk.epsilon};
                    save_matrix_cache(fs::path(matrix_cache) / key.file_name("pen"), key, pm.values);
                }
                emit(matrix_csv_path, matrix_csv(pm.values, net, source, "distance", common.precision));
            };
        });
    }

    // diff
    std::string diff_network, diff_genes, diff_measure = "pen", diff_orientation = "default", diff_csv;
    WalkArgs diff_walk;
    {
        auto* cmd = app.add_subcommand("diff", "Single-source diff vector against the oncogene set");
        cmd->add_option("--network", diff_network, "Network TSV")->required();
        cmd->add_option("--oncogenes", diff_genes, "Gene list")->required();
        cmd->add_option("--measure", diff_measure, "pen | ppr | dist")->capture_default_str();
        cmd->add_option("--orientation", diff_orientation, "default | rest-minus-genes | genes-minus-rest")
            ->capture_default_str();
        add_walk_options(cmd, diff_walk, true);
        cmd->add_option("--csv", diff_csv, "CSV output (default stdout)");
        cmd->callback([&] {
            action = [&] {
                const auto net = load_network(diff_network).network;
                const auto genes = load_gene_set(net, diff_genes);
                const auto params = analysis_params(diff_walk, diff_measure, 2, 5, {50}, diff_orientation);
                const auto diffs = compute_source_diffs(net, genes, params, Executor(common.threads));
                emit(diff_csv, source_diff_csv(diffs, net, common.precision));
            };
        });
    }

    // profile / select / esr share the analysis options
    NetworkArgs prof_args;
    WalkArgs prof_walk;
    unsigned prof_k = 2, prof_buckets = 5;
    std::vector<double> prof_levels{1, 10, 20, 50};
    std::string prof_measure = "pen", prof_orientation = "default", prof_out = "profile";
    {
        auto* cmd = app.add_subcommand("profile", "Delta histogram of combination diffs");
        cmd->add_option("--network", prof_args.network, "Network TSV (already reduced)")->required();
        cmd->add_option("--oncogenes", prof_args.oncogenes, "Gene list")->required();
        cmd->add_option("--drug-targets", prof_args.drug_targets, "Drug-target TSV")->required();
        cmd->add_option("--k", prof_k, "Combination size")->capture_default_str();
        cmd->add_option("--buckets", prof_buckets, "Number of equi-width buckets")->capture_default_str();
        cmd->add_option("--m-levels", prof_levels, "Top-m percentages")->delimiter(',')->capture_default_str();
        cmd->add_option("--measure", prof_measure, "pen | ppr | dist")->capture_default_str();
        cmd->add_option("--orientation", prof_orientation, "default | rest-minus-genes | genes-minus-rest")
            ->capture_default_str();
        add_walk_options(cmd, prof_walk, true);
        cmd->add_option("--out-dir", prof_out, "Output directory")->capture_default_str();
        cmd->callback([&] {
            action = [&] {
                const auto net = load_network(prof_args.network).network;
                const auto ann = load_annotations(net, prof_args.oncogenes, prof_args.drug_targets);
                const auto params =
                    analysis_params(prof_walk, prof_measure, prof_k, prof_buckets, prof_levels, prof_orientation);
                const auto known = known_combos(ann, net, prof_k);
                const auto result = analyze(net, ann.oncogenes, known, params, Executor(common.threads));
                const fs::path out(prof_out);
                const auto hj = histogram_json(result.histogram);
                write_text_file(out / "histogram.json", dump(hj));
                write_text_file(out / "known_combos.csv", known_membership_csv(result.histogram, net));
                write_text_file(out / "source_diff.csv", source_diff_csv(result.diffs, net, common.precision));
                write_text_file(out / "unresolved.json", unresolved_report_json(ann));
                emit_plot(result.histogram, out / "histogram.svg");
                std::cout << dump(hj["thresholds"]);
            };
        });
    }

    std::string select_network, select_genes, select_measure = "pen", select_orientation = "default", select_csv;
    WalkArgs select_walk;
    unsigned select_k = 2;
    double select_lo = -std::numeric_limits<double>::infinity();
    double select_hi = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> select_top;
    {
        auto* cmd = app.add_subcommand("select", "Combinations whose diff lies in (lo, hi]");
        cmd->add_option("--network", select_network, "Network TSV")->required();
        cmd->add_option("--oncogenes", select_genes, "Gene list")->required();
        cmd->add_option("--k", select_k, "Combination size")->capture_default_str();
        cmd->add_option("--measure", select_measure, "pen | ppr | dist")->capture_default_str();
        cmd->add_option("--orientation", select_orientation, "default | rest-minus-genes | genes-minus-rest")
            ->capture_default_str();
        cmd->add_option("--lo", select_lo, "Lower bound (exclusive unless it is the global minimum)");
        cmd->add_option("--hi", select_hi, "Upper bound (inclusive)");
        cmd->add_option("--top", select_top, "Keep only the first N");
        add_walk_options(cmd, select_walk, true);
        cmd->add_option("--csv", select_csv, "CSV output (default stdout)");
        cmd->callback([&] {
            action = [&] {
                const auto net = load_network(select_network).network;
                const auto genes = load_gene_set(net, select_genes);
                const auto params = analysis_params(select_walk, select_measure, select_k, 5, {50}, select_orientation);
                const auto diffs = compute_source_diffs(net, genes, params, Executor(common.threads));
                const EnumeratedComboStream stream(diffs, select_k);
                const auto picked = select_candidates(stream, select_lo, select_hi, select_top);
                std::string out = "rank,combination,value\n";
                for (std::size_t i = 0; i < picked.size(); ++i) {
                    std::string members;
                    for (const auto m : picked[i].members) members += (members.empty() ? "" : ";") + net.symbol(m);
                    out += std::to_string(i + 1) + ',' + members + ',' + format_fixed(picked[i].value, common.precision) +
                           '\n';
                }
                emit(select_csv, out);
            };
        });
    }

    NetworkArgs esr_args;
    WalkArgs esr_walk;
    unsigned esr_k = 2, esr_buckets = 5;
    std::vector<std::string> esr_worst;
    std::string esr_csv;
    {
        auto* cmd = app.add_subcommand("esr", "Exploration size ratio of PPR-diff and Distance-diff against PEN-diff");
        cmd->add_option("--network", esr_args.network, "Network TSV (already reduced)");
        cmd->add_option("--oncogenes", esr_args.oncogenes, "Gene list");
        cmd->add_option("--drug-targets", esr_args.drug_targets, "Drug-target TSV");
        cmd->add_option("--k", esr_k, "Combination size")->capture_default_str();
        cmd->add_option("--buckets", esr_buckets, "Number of buckets")->capture_default_str();
        cmd->add_option("--worst", esr_worst, "Precomputed worst bucket sizes, e.g. pen=226049,ppr=539293")
            ->delimiter(',');
        add_walk_options(cmd, esr_walk, true);
        cmd->add_option("--csv", esr_csv, "CSV output (default stdout)");
        cmd->callback([&] {
            action = [&] {
                if (!esr_worst.empty()) {
                    std::map<MeasureTag, std::uint64_t> sizes;
                    for (const auto& item : esr_worst) {
                        const auto eq = item.find('=');
                        if (eq == std::string::npos) throw ValidationError("expected measure=size: " + item, "worst");
                        sizes[parse_measure(item.substr(0, eq))] = parse_u64_list({item.substr(eq + 1)}).front();
                    }
                    emit(esr_csv, esr(sizes).csv());
                    return;
                }
                if (esr_args.network.empty() || esr_args.oncogenes.empty() || esr_args.drug_targets.empty())
                    throw ValidationError("esr needs --worst or --network/--oncogenes/--drug-targets", "network");
                const auto net = load_network(esr_args.network).network;
                const auto ann = load_annotations(net, esr_args.oncogenes, esr_args.drug_targets);
                const auto known = known_combos(ann, net, esr_k);
                const Executor exec(common.threads);
                auto base = analysis_params(esr_walk, "pen", esr_k, esr_buckets, {1, 10, 20, 50}, "default");
                const auto ppr = ppr_all_pairs(net, base.ppr, exec);
                std::map<MeasureTag, DeltaHistogram> hists;
                for (const auto tag : {MeasureTag::PenDiff, MeasureTag::PprDiff, MeasureTag::DistanceDiff}) {
                    base.measure = tag;
                    hists[tag] = analyze(net, ann.oncogenes, known, base, exec, &ppr).histogram;
                }
                emit(esr_csv, esr(hists).csv());
            };
        });
    }

    std::string perturb_network, perturb_mode = "remove", perturb_out = "-";
    double perturb_fraction = 0.01;
    std::uint64_t perturb_seed = 0;
    {
        auto* cmd = app.add_subcommand("perturb", "Randomly add or remove a fraction of the edges");
        cmd->add_option("--network", perturb_network, "Network TSV")->required();
        cmd->add_option("--mode", perturb_mode, "add | remove")->capture_default_str();
        cmd->add_option("--fraction", perturb_fraction, "Fraction of edges in (0, 1]")->capture_default_str();
        cmd->add_option("--seed", perturb_seed, "RNG seed (mt19937_64)")->capture_default_str();
        cmd->add_option("--out", perturb_out, "Output TSV (default stdout)");
        cmd->callback([&] {
            action = [&] {
                const auto net = load_network(perturb_network).network;
                const PerturbSpec spec{parse_perturb_mode(perturb_mode), perturb_fraction, perturb_seed};
                const auto out = perturb(net, spec);
                const std::string header = "# perturb mode=" + perturb_mode + " fraction=" +
                                           format_fixed(perturb_fraction, 6) + " seed=" + std::to_string(perturb_seed) +
                                           " source_digest=" + hex_digest(net.digest()) + "\n";
                emit(perturb_out, header + serialize_network(out));
                if (perturb_out != "-" && !perturb_out.empty())
                    std::cout << dump(json{{"seed", perturb_seed},
                                           {"edges_before", net.edge_count()},
                                           {"edges_after", out.edge_count()},
                                           {"digest", hex_digest(out.digest())}});
            };
        });
    }

    NetworkArgs noise_args;
    WalkArgs noise_walk;
    unsigned noise_k = 2, noise_buckets = 5;
    std::vector<double> noise_levels{1, 10, 20, 50}, noise_fractions{0.01, 0.05};
    std::vector<std::string> noise_modes{"add", "remove"}, noise_seeds{"1"};
    std::string noise_out = "noise";
    {
        auto* cmd = app.add_subcommand("noise-study", "Delta histograms of randomly perturbed networks");
        cmd->add_option("--network", noise_args.network, "Network TSV (already reduced)")->required();
        cmd->add_option("--oncogenes", noise_args.oncogenes, "Gene list")->required();
        cmd->add_option("--drug-targets", noise_args.drug_targets, "Drug-target TSV")->required();
        cmd->add_option("--k", noise_k, "Combination size")->capture_default_str();
        cmd->add_option("--buckets", noise_buckets, "Number of buckets")->capture_default_str();
        cmd->add_option("--m-levels", noise_levels, "Top-m percentages")->delimiter(',')->capture_default_str();
        cmd->add_option("--fractions", noise_fractions, "Edge fractions")->delimiter(',')->capture_default_str();
        cmd->add_option("--modes", noise_modes, "add,remove")->delimiter(',')->capture_default_str();
        cmd->add_option("--seeds", noise_seeds, "RNG seeds")->delimiter(',')->capture_default_str();
        add_walk_options(cmd, noise_walk, true);
        cmd->add_option("--out-dir", noise_out, "Output directory")->capture_default_str();
        cmd->callback([&] {
            action = [&] {
                const auto net = load_network(noise_args.network).network;
                const auto ann = load_annotations(net, noise_args.oncogenes, noise_args.drug_targets);
                const auto params = analysis_params(noise_walk, "pen", noise_k, noise_buckets, noise_levels, "default");
                const auto known = known_combos(ann, net, noise_k);
                std::vector<PerturbMode> modes;
                for (const auto& m : noise_modes) modes.push_back(parse_perturb_mode(m));
                const auto seeds = parse_u64_list(noise_seeds);
                const auto runs = noise_study(net, ann.oncogenes, known, params, noise_fractions, modes, seeds,
                                              Executor(common.threads));
                const fs::path out(noise_out);
                json manifest{{"tool", "tcprof"},
                              {"version", kToolVersion},
                              {"network_digest", hex_digest(net.digest())},
                              {"k", noise_k},
                              {"n_bucket", noise_buckets},
                              {"runs", json::array()}};
                for (const auto& run : runs) {
                    const std::string stem = std::string(perturb_mode_name(run.mode)) + "-" +
                                             format_fixed(run.fraction * 100.0, 2) + "pct-seed" +
                                             std::to_string(run.seed);
                    write_text_file(out / (stem + ".json"), dump(noise_run_json(run)));
                    emit_plot(run.histogram, out / (stem + ".svg"),
                              "random edge " + std::string(run.mode == PerturbMode::Add ? "addition" : "removal") +
                                  ": " + format_fixed(run.fraction * 100.0, 2) + "% (seed " +
                                  std::to_string(run.seed) + ")");
                    const auto& h = run.histogram;
                    manifest["runs"].push_back(json{{"file", stem + ".json"},
                                                    {"mode", std::string(perturb_mode_name(run.mode))},
                                                    {"fraction", run.fraction},
                                                    {"seed", run.seed},
                                                    {"network_digest", hex_digest(run.network_digest)},
                                                    {"max_coverage_bucket", h.max_coverage_bucket},
                                                    {"delta_min", h.delta_min},
                                                    {"delta_max", h.delta_max},
                                                    {"coverage", h.buckets[h.max_coverage_bucket].coverage}});
                }
                write_text_file(out / "manifest.json", dump(manifest));
                std::cout << dump(manifest["runs"]);
            };
        });
    }

    PipelineConfig run_config;
    std::string run_config_file, run_measure = "pen";
    {
        auto* cmd = app.add_subcommand("run", "Full pipeline: subnetwork, PPR, PEN, diffs, histogram");
        cmd->add_option("--config", run_config_file, "JSON config (flags override)");
        cmd->add_option("--network", run_config.network_path, "Network TSV");
        cmd->add_option("--oncogenes", run_config.oncogene_path, "Gene list");
        cmd->add_option("--drug-targets", run_config.drug_target_path, "Drug-target TSV");
        cmd->add_option("--out-dir", run_config.out_dir, "Output directory")->capture_default_str();
        cmd->add_option("--cache-dir", run_config.cache_dir, "Matrix cache directory");
        cmd->add_option("--alpha", run_config.alpha)->capture_default_str();
        cmd->add_option("--epsilon", run_config.epsilon)->capture_default_str();
        cmd->add_option("--tol", run_config.tolerance)->capture_default_str();
        cmd->add_option("--d", run_config.path_length_threshold)->capture_default_str();
        cmd->add_option("--k", run_config.k)->capture_default_str();
        cmd->add_option("--buckets", run_config.n_bucket)->capture_default_str();
        cmd->add_option("--m-levels", run_config.m_levels)->delimiter(',')->capture_default_str();
        cmd->add_option("--measure", run_measure, "pen | ppr | dist")->capture_default_str();
        cmd->add_option("--seed", run_config.seed, "Recorded in the manifest")->capture_default_str();
        cmd->callback([&, cmd] {
            action = [&, cmd] {
                PipelineConfig config = run_config;
                if (!run_config_file.empty()) {
                    json j;
                    try {
                        j = json::parse(read_text_file(run_config_file));
                    } catch (const json::exception& e) {
                        throw ValidationError(std::string("config is not valid JSON: ") + e.what(), "config");
                    }
                    config = PipelineConfig::from_json(j);
                    // Explicit flags win over the file.
                    auto given = [&](const char* name) { return cmd->count(name) > 0; };
                    if (given("--network")) config.network_path = run_config.network_path;
                    if (given("--oncogenes")) config.oncogene_path = run_config.oncogene_path;
                    if (given("--drug-targets")) config.drug_target_path = run_config.drug_target_path;
                    if (given("--out-dir")) config.out_dir = run_config.out_dir;
                    if (given("--cache-dir")) config.cache_dir = run_config.cache_dir;
                    if (given("--alpha")) config.alpha = run_config.alpha;
                    if (given("--epsilon")) config.epsilon = run_config.epsilon;
                    if (given("--tol")) config.tolerance = run_config.tolerance;
                    if (given("--d")) config.path_length_threshold = run_config.path_length_threshold;
                    if (given("--k")) config.k = run_config.k;
                    if (given("--buckets")) config.n_bucket = run_config.n_bucket;
                    if (given("--m-levels")) config.m_levels = run_config.m_levels;
                    if (given("--measure")) config.measure = parse_measure(run_measure);
                    if (given("--seed")) config.seed = run_config.seed;
                } else {
                    config.measure = parse_measure(run_measure);
                }
                const auto result = run_pipeline(config, Executor(common.threads));
                const auto& h = result.histogram;
                std::cout << "subnetwork: " << result.subnet_nodes << " nodes, " << result.subnet_edges << " edges\n"
                          << "PPR: "
                          << (result.pen_cache_hit ? "skipped (PEN cache hit)"
                                                   : result.ppr_cache_hit ? "cache hit" : "computed")
                          << "\n"
                          << "thresholds: [" << format_fixed(h.delta_min) << ", " << format_fixed(h.delta_max)
                          << "] coverage " << format_fixed(h.buckets[h.max_coverage_bucket].coverage) << "%\n"
                          << "outputs: " << result.out_dir.string() << "\n";
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << dump(json{{"error", {{"kind", "validation"}, {"message", e.what()}, {"exit_code", 1}}}});
        return 1;
    }

    try {
        action();
        return 0;
    } catch (const Error& e) {
        std::cerr << dump(error_json(e));
        return exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
        std::cerr << dump(json{{"error", {{"kind", "io"}, {"message", e.what()}, {"exit_code", 3}}}});
        return 3;
    } catch (const std::exception& e) {
        std::cerr << dump(json{{"error", {{"kind", "compute"}, {"message", e.what()}, {"exit_code", 2}}}});
        return 2;
    }
}
