#include "tcprof/analysis.hpp"

#include "tcprof/error.hpp"

namespace tcprof {

void AnalysisParams::validate() const {
    ppr.validate();
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive", "epsilon");
    if (k < 2) throw ValidationError("k must be at least 2", "k");
    histogram.validate();
}

SourceDiffVector compute_source_diffs(const SignalingNetwork& network, std::span<const NodeId> genes,
                                      const AnalysisParams& params, const Executor& executor, const PprMatrix* ppr) {
    params.validate();
    const auto orientation = params.effective_orientation();
    if (params.measure == MeasureTag::DistanceDiff)
        return distance_diff_vector(network, genes, orientation, params.distance_sentinel, executor);

    std::optional<PprMatrix> computed;
    if (ppr == nullptr) {
        computed = ppr_all_pairs(network, params.ppr, executor);
        ppr = &*computed;
    } else if (ppr->values.size() != network.node_count()) {
        throw ValidationError("PPR matrix does not match the network");
    }
    if (params.measure == MeasureTag::PprDiff) return ppr_diff_vector(*ppr, genes, orientation, executor);
    const auto pen = pen_matrix(*ppr, network, params.epsilon);
    return source_diff_vector(pen.values, genes, MeasureTag::PenDiff, orientation, executor);
}

Analysis analyze(const SignalingNetwork& network, std::span<const NodeId> genes, const KnownComboSet& known,
                 const AnalysisParams& params, const Executor& executor, const PprMatrix* ppr) {
    Analysis result;
    result.diffs = compute_source_diffs(network, genes, params, executor, ppr);
    if (known.k != params.k) throw ValidationError("known combinations were built for a different k", "k");
    const EnumeratedComboStream stream(result.diffs, params.k);
    result.histogram = build_delta_histogram(stream, known, params.histogram, params.measure);
    return result;
}

}  // namespace tcprof
