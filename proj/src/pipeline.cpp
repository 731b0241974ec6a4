#include "tcprof/pipeline.hpp"

#include <cstdlib>

#include "tcprof/io.hpp"
#include "tcprof/report.hpp"
#include "tcprof/subnet.hpp"

namespace tcprof {

namespace {

using nlohmann::json;

std::string file_digest(const std::string& path) { return hex_digest(fnv1a64(read_text_file(path))); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

void PipelineConfig::validate() const {
    if (network_path.empty()) throw ValidationError("network path is required", "network");
    if (oncogene_path.empty()) throw ValidationError("oncogene path is required", "oncogenes");
    if (drug_target_path.empty()) throw ValidationError("drug-target path is required", "drug_targets");
    if (out_dir.empty()) throw ValidationError("output directory is required", "out_dir");
    if (path_length_threshold < 2) throw ValidationError("d must be at least 2", "d");
    analysis_params().validate();
}

AnalysisParams PipelineConfig::analysis_params() const {
    AnalysisParams p;
    p.ppr.alpha = alpha;
    p.ppr.tolerance = tolerance;
    p.epsilon = epsilon;
    p.measure = measure;
    p.k = k;
    p.histogram.n_bucket = n_bucket;
    p.histogram.m_levels = m_levels;
    return p;
}

std::filesystem::path PipelineConfig::resolved_cache_dir() const {
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("TCPROF_CACHE_DIR"); env && *env) return env;
    return std::filesystem::path(out_dir) / "cache";
}

json PipelineConfig::to_json() const {
    return json{{"network", network_path},
                {"oncogenes", oncogene_path},
                {"drug_targets", drug_target_path},
                {"out_dir", out_dir},
                {"cache_dir", cache_dir},
                {"alpha", alpha},
                {"epsilon", epsilon},
                {"tolerance", tolerance},
                {"d", path_length_threshold},
                {"k", k},
                {"n_bucket", n_bucket},
                {"m_levels", m_levels},
                {"measure", std::string(measure_name(measure))},
                {"seed", seed}};
}

PipelineConfig PipelineConfig::from_json(const json& j) {
    PipelineConfig c;
    try {
        c.network_path = j.value("network", c.network_path);
        c.oncogene_path = j.value("oncogenes", c.oncogene_path);
        c.drug_target_path = j.value("drug_targets", c.drug_target_path);
        c.out_dir = j.value("out_dir", c.out_dir);
        c.cache_dir = j.value("cache_dir", c.cache_dir);
        c.alpha = j.value("alpha", c.alpha);
        c.epsilon = j.value("epsilon", c.epsilon);
        c.tolerance = j.value("tolerance", c.tolerance);
        c.path_length_threshold = j.value("d", c.path_length_threshold);
        c.k = j.value("k", c.k);
        c.n_bucket = j.value("n_bucket", c.n_bucket);
        c.m_levels = j.value("m_levels", c.m_levels);
        c.measure = parse_measure(j.value("measure", std::string("pen")));
        c.seed = j.value("seed", c.seed);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad pipeline config: ") + e.what(), "config");
    }
    return c;
}

PreparedInputs prepare_inputs(const std::string& network_path, const std::string& oncogene_path,
                              const std::string& drug_target_path, unsigned path_length_threshold) {
    PreparedInputs in;
    in.full = load_network(network_path, /*drop_neutral=*/true);
    in.full_annotations = load_annotations(in.full.network, oncogene_path, drug_target_path);
    const SubnetSpec spec{in.full_annotations.targets, in.full_annotations.oncogenes, path_length_threshold};
    in.subnet = build_subnetwork(in.full.network, spec);
    in.annotations = project_annotations(in.full_annotations, in.full.network, in.subnet);
    return in;
}

json subnet_summary_json(const PreparedInputs& in, unsigned path_length_threshold) {
    const auto& s = in.full.stats;
    return json{{"path_length_threshold", path_length_threshold},
                {"nodes", in.subnet.node_count()},
                {"edges", in.subnet.edge_count()},
                {"known_targets", in.annotations.targets.size()},
                {"oncogenes", in.annotations.oncogenes.size()},
                {"network_digest", hex_digest(in.subnet.digest())},
                {"parent",
                 {{"nodes", in.full.network.node_count()},
                  {"edges", in.full.network.edge_count()},
                  {"known_targets", in.full_annotations.targets.size()},
                  {"oncogenes", in.full_annotations.oncogenes.size()},
                  {"rows", s.rows},
                  {"neutral_dropped", s.neutral_dropped},
                  {"duplicates", s.duplicates},
                  {"self_loops", s.self_loops}}}};
}

PprMatrix cached_ppr(const SignalingNetwork& network, const PprParams& params, const std::filesystem::path& cache_dir,
                     const Executor& executor, bool* hit) {
    const MatrixCacheKey key{network.digest(), params.alpha, params.tolerance, std::nullopt};
    const auto path = cache_dir / key.file_name("ppr");
    if (auto cached = load_matrix_cache(path, key); cached && cached->size() == network.node_count()) {
        if (hit) *hit = true;
        return PprMatrix{network.digest(), params, std::move(*cached), std::vector<double>(network.node_count(), 0.0)};
    }
    if (hit) *hit = false;
    auto ppr = ppr_all_pairs(network, params, executor);
    save_matrix_cache(path, key, ppr.values);
    return ppr;
}

PipelineResult run_pipeline(const PipelineConfig& config, const Executor& executor) {
    config.validate();
    const auto params = config.analysis_params();
    const std::filesystem::path out(config.out_dir);
    const auto cache_dir = config.resolved_cache_dir();
    std::filesystem::create_directories(out);

    const auto in = prepare_inputs(config.network_path, config.oncogene_path, config.drug_target_path,
                                   config.path_length_threshold);
    const auto& net = in.subnet;
    PipelineResult result;
    result.out_dir = out;
    result.subnet_nodes = net.node_count();
    result.subnet_edges = net.edge_count();

    write_text_file(out / "unresolved.json", unresolved_report_json(in.full_annotations));
    write_network(net, out / "subnet.tsv");
    write_text_file(out / "subnet_summary.json", dump(subnet_summary_json(in, config.path_length_threshold)));

    const auto known = known_combos(in.annotations, net, config.k);

    std::string ppr_status = "skipped", pen_status = "skipped";
    SourceDiffVector diffs;
    if (config.measure == MeasureTag::PenDiff) {
        const MatrixCacheKey pen_key{net.digest(), config.alpha, config.tolerance, config.epsilon};
        const auto pen_path = cache_dir / pen_key.file_name("pen");
        auto pen_values = load_matrix_cache(pen_path, pen_key);
        if (pen_values && pen_values->size() == net.node_count()) {
            result.pen_cache_hit = true;
            pen_status = "hit";
        } else {
            const auto ppr = cached_ppr(net, params.ppr, cache_dir, executor, &result.ppr_cache_hit);
            result.ppr_computed = !result.ppr_cache_hit;
            ppr_status = result.ppr_cache_hit ? "hit" : "miss";
            pen_values = pen_matrix(ppr, net, config.epsilon).values;
            save_matrix_cache(pen_path, pen_key, *pen_values);
            pen_status = "miss";
        }
        diffs = source_diff_vector(*pen_values, in.annotations.oncogenes, MeasureTag::PenDiff,
                                   params.effective_orientation(), executor);
    } else if (config.measure == MeasureTag::PprDiff) {
        const auto ppr = cached_ppr(net, params.ppr, cache_dir, executor, &result.ppr_cache_hit);
        result.ppr_computed = !result.ppr_cache_hit;
        ppr_status = result.ppr_cache_hit ? "hit" : "miss";
        diffs = compute_source_diffs(net, in.annotations.oncogenes, params, executor, &ppr);
    } else {
        diffs = compute_source_diffs(net, in.annotations.oncogenes, params, executor);
    }
    write_text_file(out / "source_diff.csv", source_diff_csv(diffs, net));

    const EnumeratedComboStream stream(diffs, config.k);
    result.histogram = build_delta_histogram(stream, known, params.histogram, config.measure);
    const auto& h = result.histogram;
    write_text_file(out / "histogram.json", dump(histogram_json(h)));
    write_text_file(out / "known_combos.csv", known_membership_csv(h, net));
    emit_plot(h, out / "histogram.svg");
    write_text_file(out / "thresholds.json",
                    dump(json{{"measure", std::string(measure_name(h.measure))},
                              {"bucket", h.max_coverage_bucket},
                              {"delta_min", h.delta_min},
                              {"delta_max", h.delta_max},
                              {"coverage", h.buckets[h.max_coverage_bucket].coverage},
                              {"display", "[" + format_fixed(h.delta_min) + ", " + format_fixed(h.delta_max) + "]"}}));

    const json manifest{{"tool", "tcprof"},
                        {"version", kToolVersion},
                        {"config", config.to_json()},
                        {"seed", config.seed},
                        {"inputs",
                         {{"network", file_digest(config.network_path)},
                          {"oncogenes", file_digest(config.oncogene_path)},
                          {"drug_targets", file_digest(config.drug_target_path)}}},
                        {"subnetwork_digest", hex_digest(net.digest())},
                        {"cache", {{"ppr", ppr_status}, {"pen", pen_status}}}};
    write_text_file(out / "manifest.json", dump(manifest));
    return result;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Validation:
        case ErrorKind::Parse: return 1;
        case ErrorKind::Compute: return 2;
        case ErrorKind::Io: return 3;
    }
    return 2;
}

std::string error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Compute: return "compute";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

json error_json(const Error& error) {
    json body{{"kind", error_kind_name(error.kind())}, {"message", error.what()}, {"exit_code", exit_code(error.kind())}};
    if (const auto* v = dynamic_cast<const ValidationError*>(&error); v && !v->field().empty()) body["field"] = v->field();
    if (const auto* p = dynamic_cast<const ParseError*>(&error)) body["line"] = p->line();
    if (const auto* c = dynamic_cast<const ComputeError*>(&error)) body["residual"] = c->residual();
    return json{{"error", body}};
}

}  // namespace tcprof
