#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcprof/graph.hpp"
#include "tcprof/influence.hpp"

namespace tcprof {

/// k-subsets of single drugs' target sets, canonical and deduplicated.
struct KnownComboSet {
    unsigned k = 2;
    std::vector<std::vector<NodeId>> combos;  // sorted lexicographically

    bool contains(std::span<const NodeId> members) const;
    std::size_t size() const noexcept { return combos.size(); }
};

KnownComboSet known_combos(const AnnotationSets& annotations, const SignalingNetwork& network, unsigned k);

struct HistogramParams {
    unsigned n_bucket = 5;
    std::vector<double> m_levels{1, 10, 20, 50};  // percentages in (0, 100]

    void validate() const;
};

struct Bucket {
    double r_min = 0.0;
    double r_max = 0.0;
    std::uint64_t combo_count = 0;
    std::uint64_t known_in_bucket = 0;
    std::vector<std::uint64_t> known_in_top;  // parallel to DeltaHistogram::m_levels
    std::vector<double> percent;              // 100 * known_in_top / total_known
    std::uint64_t known_in_top50 = 0;
    double coverage = 0.0;                    // percent at m = 50
};

struct KnownPlacement {
    std::vector<NodeId> members;
    double value = 0.0;
    std::size_t bucket = 0;
    std::uint64_t rank = 0;  // 1-based, value descending within the bucket
};

struct DeltaHistogram {
    MeasureTag measure = MeasureTag::PenDiff;
    unsigned k = 2;
    unsigned n_bucket = 5;
    std::vector<double> m_levels;
    std::vector<Bucket> buckets;
    double global_min = 0.0;
    double global_max = 0.0;
    std::uint64_t total_combos = 0;
    std::uint64_t total_known = 0;
    std::size_t max_coverage_bucket = 0;
    double delta_min = 0.0;
    double delta_max = 0.0;
    bool degenerate = false;  // all values equal: a single [v, v] bucket
    std::vector<KnownPlacement> known;  // by bucket, then rank

    std::uint64_t worst_bucket_size() const;
};

/// Number of leading ranks that make up the top m percent of `count` items,
/// ceil(m / 100 * count).
std::uint64_t top_rank_limit(double m_percent, std::uint64_t count);

/// Index of the bucket that holds `value`: r_min < value <= r_max, with the
/// lowest bucket also taking value == global_min.
std::size_t bucket_of(const DeltaHistogram& histogram, double value);

/// Equi-width histogram over the streamed combination values with per-bucket
/// known-combination rank statistics. Reads the stream twice.
DeltaHistogram build_delta_histogram(const ComboStream& stream, const KnownComboSet& known,
                                     const HistogramParams& params = {},
                                     MeasureTag measure = MeasureTag::PenDiff);

/// Combinations with lo < value <= hi (also value == lo when lo is the stream
/// minimum), value-descending, ties by ascending member tuple, cut to top_m.
std::vector<ComboScore> select_candidates(const ComboStream& stream, double lo, double hi,
                                          std::optional<std::size_t> top_m = std::nullopt);

/// Ranking order used everywhere: higher value first, then smaller tuple.
bool ranks_before(double value_a, std::span<const NodeId> a, double value_b, std::span<const NodeId> b);

}  // namespace tcprof
