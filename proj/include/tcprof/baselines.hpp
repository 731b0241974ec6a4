#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "tcprof/executor.hpp"
#include "tcprof/graph.hpp"
#include "tcprof/influence.hpp"
#include "tcprof/matrix.hpp"
#include "tcprof/ppr.hpp"
#include "tcprof/profiler.hpp"

namespace tcprof {

/// Single-source diff over raw PPR values. Defaults to mean over genes minus
/// mean over the rest so that larger still means closer to the genes.
SourceDiffVector ppr_diff_vector(const PprMatrix& ppr, std::span<const NodeId> genes,
                                 DiffOrientation orientation = DiffOrientation::GenesMinusRest,
                                 const Executor& executor = Executor{});

/// All-pairs hop counts; unreachable pairs get `sentinel` (node count when unset).
DenseMatrix shortest_path_matrix(const SignalingNetwork& network, std::optional<double> sentinel = std::nullopt,
                                 const Executor& executor = Executor{});

SourceDiffVector distance_diff_vector(const SignalingNetwork& network, std::span<const NodeId> genes,
                                      DiffOrientation orientation = DiffOrientation::RestMinusGenes,
                                      std::optional<double> sentinel = std::nullopt,
                                      const Executor& executor = Executor{});

struct EsrEntry {
    std::uint64_t worst_bucket_size = 0;
    double ratio = 0.0;
};

struct EsrReport {
    std::map<MeasureTag, EsrEntry> entries;

    /// measure,worst_bucket_size,esr with the ratio at two decimals.
    std::string csv() const;
};

/// Worst-case bucket size of every measure divided by that of the PEN measure.
EsrReport esr(const std::map<MeasureTag, std::uint64_t>& worst_bucket_sizes);
EsrReport esr(const std::map<MeasureTag, DeltaHistogram>& histograms);

}  // namespace tcprof
