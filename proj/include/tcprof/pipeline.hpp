#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcprof/analysis.hpp"
#include "tcprof/error.hpp"
#include "tcprof/executor.hpp"

namespace tcprof {

inline constexpr const char* kToolVersion = "0.1.0";

struct PipelineConfig {
    std::string network_path;
    std::string oncogene_path;
    std::string drug_target_path;
    std::string out_dir = "out";
    std::string cache_dir;  // empty: $TCPROF_CACHE_DIR, else <out_dir>/cache

    double alpha = 0.2;
    double epsilon = kDefaultEpsilon;
    double tolerance = 1e-9;
    unsigned path_length_threshold = 5;
    unsigned k = 2;
    unsigned n_bucket = 5;
    std::vector<double> m_levels{1, 10, 20, 50};
    MeasureTag measure = MeasureTag::PenDiff;
    std::uint64_t seed = 0;

    void validate() const;
    AnalysisParams analysis_params() const;
    std::filesystem::path resolved_cache_dir() const;

    nlohmann::json to_json() const;
    static PipelineConfig from_json(const nlohmann::json& j);
};

struct PipelineResult {
    std::filesystem::path out_dir;
    bool ppr_cache_hit = false;
    bool pen_cache_hit = false;
    bool ppr_computed = false;
    std::size_t subnet_nodes = 0;
    std::size_t subnet_edges = 0;
    DeltaHistogram histogram;
};

/// Subnetwork -> PPR -> PEN -> diffs -> histogram, writing every artifact to
/// config.out_dir. Matrix caches are reused when their keys match.
PipelineResult run_pipeline(const PipelineConfig& config, const Executor& executor = Executor{});

/// Reads the network and annotations, builds the subnetwork and reprojects the
/// annotations onto it. Shared by `run` and `build-subnet`.
struct PreparedInputs {
    LoadedNetwork full;
    AnnotationSets full_annotations;
    SignalingNetwork subnet;
    AnnotationSets annotations;  // projected onto subnet
};
PreparedInputs prepare_inputs(const std::string& network_path, const std::string& oncogene_path,
                              const std::string& drug_target_path, unsigned path_length_threshold);

nlohmann::json subnet_summary_json(const PreparedInputs& inputs, unsigned path_length_threshold);

int exit_code(ErrorKind kind);
std::string error_kind_name(ErrorKind kind);
nlohmann::json error_json(const Error& error);

/// Loads or computes the PPR matrix through the cache directory.
PprMatrix cached_ppr(const SignalingNetwork& network, const PprParams& params, const std::filesystem::path& cache_dir,
                     const Executor& executor, bool* hit = nullptr);

}  // namespace tcprof
