#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tcprof/graph.hpp"
#include "tcprof/perturb.hpp"
#include "tcprof/profiler.hpp"

namespace tcprof {

/// Full-precision JSON view of a histogram (buckets, per-m counts and
/// percentages, thresholds).
nlohmann::json histogram_json(const DeltaHistogram& histogram);

/// One row per known combination: bucket, bounds, members, value, rank.
std::string known_membership_csv(const DeltaHistogram& histogram, const SignalingNetwork& network);

/// Grouped bar chart: one group per bucket, one bar per m level.
std::string histogram_svg(const DeltaHistogram& histogram, const std::string& title = {});
void emit_plot(const DeltaHistogram& histogram, const std::filesystem::path& path, const std::string& title = {});

std::string m_level_label(double m);

nlohmann::json noise_run_json(const NoiseRun& run);

}  // namespace tcprof
