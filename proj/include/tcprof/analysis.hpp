#pragma once

#include <optional>
#include <vector>

#include "tcprof/baselines.hpp"
#include "tcprof/executor.hpp"
#include "tcprof/graph.hpp"
#include "tcprof/influence.hpp"
#include "tcprof/pen.hpp"
#include "tcprof/ppr.hpp"
#include "tcprof/profiler.hpp"

namespace tcprof {

/// Parameters for PPR -> distance -> diff -> histogram on one network.
struct AnalysisParams {
    PprParams ppr;
    double epsilon = kDefaultEpsilon;
    MeasureTag measure = MeasureTag::PenDiff;
    std::optional<DiffOrientation> orientation;  // measure default when unset
    std::optional<double> distance_sentinel;     // node count when unset
    unsigned k = 2;
    HistogramParams histogram;

    void validate() const;
    DiffOrientation effective_orientation() const { return orientation.value_or(default_orientation(measure)); }
};

/// Single-source diffs for the configured measure. `ppr` is used when given
/// (and must belong to `network`); otherwise it is computed when needed.
SourceDiffVector compute_source_diffs(const SignalingNetwork& network, std::span<const NodeId> genes,
                                      const AnalysisParams& params, const Executor& executor = Executor{},
                                      const PprMatrix* ppr = nullptr);

struct Analysis {
    SourceDiffVector diffs;
    DeltaHistogram histogram;
};

Analysis analyze(const SignalingNetwork& network, std::span<const NodeId> genes, const KnownComboSet& known,
                 const AnalysisParams& params, const Executor& executor = Executor{},
                 const PprMatrix* ppr = nullptr);

}  // namespace tcprof
