#include "tcprof/baselines.hpp"

#include "tcprof/error.hpp"
#include "tcprof/io.hpp"
#include "tcprof/subnet.hpp"

namespace tcprof {

SourceDiffVector ppr_diff_vector(const PprMatrix& ppr, std::span<const NodeId> genes, DiffOrientation orientation,
                                 const Executor& executor) {
    return source_diff_vector(ppr.values, genes, MeasureTag::PprDiff, orientation, executor);
}

DenseMatrix shortest_path_matrix(const SignalingNetwork& network, std::optional<double> sentinel,
                                 const Executor& executor) {
    const auto n = network.node_count();
    const double unreachable = sentinel.value_or(static_cast<double>(n));
    DenseMatrix dist(n);
    executor.for_each_index(n, [&](std::size_t s) {
        const NodeId source{static_cast<std::uint32_t>(s)};
        const auto hops = bfs_distances(network, std::span<const NodeId>(&source, 1));
        auto row = dist.row(s);
        for (std::size_t t = 0; t < n; ++t) row[t] = hops[t] == kUnreachable ? unreachable : hops[t];
    });
    return dist;
}

SourceDiffVector distance_diff_vector(const SignalingNetwork& network, std::span<const NodeId> genes,
                                      DiffOrientation orientation, std::optional<double> sentinel,
                                      const Executor& executor) {
    return source_diff_vector(shortest_path_matrix(network, sentinel, executor), genes, MeasureTag::DistanceDiff,
                              orientation, executor);
}

EsrReport esr(const std::map<MeasureTag, std::uint64_t>& worst_bucket_sizes) {
    const auto pen = worst_bucket_sizes.find(MeasureTag::PenDiff);
    if (pen == worst_bucket_sizes.end()) throw ValidationError("ESR needs the PEN-diff histogram", "measure");
    if (pen->second == 0) throw ValidationError("PEN-diff worst bucket is empty");
    EsrReport report;
    for (const auto& [measure, size] : worst_bucket_sizes) {
        if (size == 0) throw ValidationError("worst bucket of " + std::string(measure_name(measure)) + " is empty");
        report.entries[measure] =
            EsrEntry{size, measure == MeasureTag::PenDiff ? 1.0 : static_cast<double>(size) / pen->second};
    }
    return report;
}

EsrReport esr(const std::map<MeasureTag, DeltaHistogram>& histograms) {
    std::map<MeasureTag, std::uint64_t> sizes;
    const DeltaHistogram* reference = nullptr;
    for (const auto& [measure, hist] : histograms) {
        if (reference && (hist.k != reference->k || hist.total_combos != reference->total_combos ||
                          hist.n_bucket != reference->n_bucket))
            throw ValidationError("ESR histograms must share network, k and bucket count");
        reference = &hist;
        sizes[measure] = hist.worst_bucket_size();
    }
    return esr(sizes);
}

std::string EsrReport::csv() const {
    std::string out = "measure,worst_bucket_size,esr\n";
    for (const auto& [measure, entry] : entries) {
        out += measure_name(measure);
        out += ',' + std::to_string(entry.worst_bucket_size) + ',' + format_fixed(entry.ratio, 2) + '\n';
    }
    return out;
}

}  // namespace tcprof
