#include "tcprof/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tcprof/error.hpp"

namespace tcprof {

namespace {

struct TupleHash {
    std::size_t operator()(const std::vector<NodeId>& members) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto m : members) {
            h ^= m.value;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

void combinations_of(const std::vector<NodeId>& pool, unsigned k, std::set<std::vector<NodeId>>& out) {
    if (pool.size() < k) return;
    std::vector<std::size_t> idx(k);
    for (unsigned i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        std::vector<NodeId> combo(k);
        for (unsigned i = 0; i < k; ++i) combo[i] = pool[idx[i]];
        out.insert(std::move(combo));
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[i] == pool.size() - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (unsigned j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<double> bucket_edges(double lo, double hi, unsigned n_bucket) {
    std::vector<double> edges(n_bucket + 1);
    const double width = (hi - lo) / n_bucket;
    for (unsigned i = 0; i < n_bucket; ++i) edges[i] = lo + i * width;
    edges[n_bucket] = hi;
    return edges;
}

}  // namespace

bool KnownComboSet::contains(std::span<const NodeId> members) const {
    return std::binary_search(combos.begin(), combos.end(), members,
                              [](const auto& a, const auto& b) {
                                  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                              });
}

KnownComboSet known_combos(const AnnotationSets& annotations, const SignalingNetwork& network, unsigned k) {
    if (k < 2) throw ValidationError("k must be at least 2", "k");
    std::set<std::vector<NodeId>> combos;
    bool any_large_enough = false;
    for (const auto& [drug, targets] : annotations.drugs) {
        std::vector<NodeId> pool;
        for (const auto t : targets)
            if (t.index() < network.node_count()) pool.push_back(t);
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        if (pool.size() >= k) any_large_enough = true;
        combinations_of(pool, k, combos);
    }
    if (!any_large_enough)
        throw ValidationError("no drug has " + std::to_string(k) + " or more targets in the network", "k");
    return KnownComboSet{k, std::vector<std::vector<NodeId>>(combos.begin(), combos.end())};
}

void HistogramParams::validate() const {
    if (n_bucket < 2) throw ValidationError("bucket count must exceed 1", "n_bucket");
    if (m_levels.empty()) throw ValidationError("at least one m level is required", "m_levels");
    for (const auto m : m_levels)
        if (!(m > 0.0 && m <= 100.0)) throw ValidationError("m levels must lie in (0, 100]", "m_levels");
}

std::uint64_t DeltaHistogram::worst_bucket_size() const {
    std::uint64_t worst = 0;
    for (const auto& b : buckets) worst = std::max(worst, b.combo_count);
    return worst;
}

std::uint64_t top_rank_limit(double m_percent, std::uint64_t count) {
    if (m_percent == std::floor(m_percent) && m_percent <= 100.0) {
        const auto m = static_cast<std::uint64_t>(m_percent);
        return (m * count + 99) / 100;
    }
    const long double exact = static_cast<long double>(m_percent) * count / 100.0L;
    return static_cast<std::uint64_t>(std::ceil(exact - 1e-12L * std::max(1.0L, exact)));
}

bool ranks_before(double value_a, std::span<const NodeId> a, double value_b, std::span<const NodeId> b) {
    if (value_a != value_b) return value_a > value_b;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t bucket_of(const DeltaHistogram& histogram, double value) {
    const auto& buckets = histogram.buckets;
    if (buckets.size() == 1) return 0;
    const double lo = histogram.global_min;
    const double width = (histogram.global_max - lo) / static_cast<double>(buckets.size());
    auto guess = static_cast<std::ptrdiff_t>(std::floor((value - lo) / width));
    guess = std::clamp<std::ptrdiff_t>(guess, 0, static_cast<std::ptrdiff_t>(buckets.size()) - 1);
    auto i = static_cast<std::size_t>(guess);
    while (i > 0 && value <= buckets[i].r_min) --i;
    while (i + 1 < buckets.size() && value > buckets[i].r_max) ++i;
    return i;
}

DeltaHistogram build_delta_histogram(const ComboStream& stream, const KnownComboSet& known,
                                     const HistogramParams& params, MeasureTag measure) {
    params.validate();
    DeltaHistogram hist;
    hist.measure = measure;
    hist.k = known.k;
    hist.n_bucket = params.n_bucket;
    hist.m_levels = params.m_levels;
    hist.total_known = known.size();

    // Pass 1: range, size, and the values of known combinations.
    std::unordered_map<std::vector<NodeId>, double, TupleHash> known_values;
    std::unordered_set<std::vector<NodeId>, TupleHash> known_lookup(known.combos.begin(), known.combos.end());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::uint64_t total = 0;
    std::vector<NodeId> key;
    stream.for_each([&](std::span<const NodeId> members, double value) {
        if (!std::isfinite(value)) throw ComputeError("non-finite combination value");
        lo = std::min(lo, value);
        hi = std::max(hi, value);
        ++total;
        if (!known_lookup.empty()) {
            key.assign(members.begin(), members.end());
            if (known_lookup.count(key)) known_values[key] = value;
        }
    });
    if (total == 0) throw ValidationError("combination stream is empty");
    hist.total_combos = total;
    hist.global_min = lo;
    hist.global_max = hi;

    hist.degenerate = lo == hi;
    const unsigned bucket_count = hist.degenerate ? 1 : params.n_bucket;
    const auto edges = hist.degenerate ? std::vector<double>{lo, hi} : bucket_edges(lo, hi, bucket_count);
    hist.buckets.resize(bucket_count);
    for (unsigned i = 0; i < bucket_count; ++i) {
        hist.buckets[i].r_min = edges[i];
        hist.buckets[i].r_max = edges[i + 1];
    }

    // Known combinations per bucket, in rank order.
    std::vector<std::vector<KnownPlacement>> placed(bucket_count);
    for (auto& [members, value] : known_values)
        placed[bucket_of(hist, value)].push_back(KnownPlacement{members, value, 0, 0});
    for (std::size_t b = 0; b < bucket_count; ++b) {
        auto& list = placed[b];
        std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
            return ranks_before(x.value, x.members, y.value, y.members);
        });
        for (auto& p : list) p.bucket = b;
    }

    // Pass 2: bucket sizes, and for each known combination how many combinations
    // of its bucket rank ahead of it. A streamed combination ranks ahead of a
    // suffix of the rank-ordered known list, recorded in a difference array.
    std::vector<std::vector<std::uint64_t>> ahead_diff(bucket_count);
    for (std::size_t b = 0; b < bucket_count; ++b) ahead_diff[b].assign(placed[b].size() + 1, 0);
    stream.for_each([&](std::span<const NodeId> members, double value) {
        const auto b = bucket_of(hist, value);
        ++hist.buckets[b].combo_count;
        const auto& list = placed[b];
        if (list.empty()) return;
        const auto first_after = std::partition_point(list.begin(), list.end(), [&](const KnownPlacement& q) {
            return !ranks_before(value, members, q.value, q.members);
        });
        ++ahead_diff[b][static_cast<std::size_t>(first_after - list.begin())];
    });

    for (std::size_t b = 0; b < bucket_count; ++b) {
        auto& bucket = hist.buckets[b];
        std::uint64_t ahead = 0;
        for (std::size_t q = 0; q < placed[b].size(); ++q) {
            ahead += ahead_diff[b][q];
            placed[b][q].rank = ahead + 1;
        }
        bucket.known_in_bucket = placed[b].size();
        auto count_within = [&](double m) {
            const auto limit = top_rank_limit(m, bucket.combo_count);
            return static_cast<std::uint64_t>(std::count_if(placed[b].begin(), placed[b].end(),
                                                            [&](const auto& p) { return p.rank <= limit; }));
        };
        auto percent = [&](std::uint64_t count) {
            return hist.total_known == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(hist.total_known);
        };
        for (const auto m : hist.m_levels) {
            bucket.known_in_top.push_back(count_within(m));
            bucket.percent.push_back(percent(bucket.known_in_top.back()));
        }
        bucket.known_in_top50 = count_within(50.0);
        bucket.coverage = percent(bucket.known_in_top50);
        for (auto& p : placed[b]) hist.known.push_back(std::move(p));
    }

    std::size_t best = 0;
    for (std::size_t b = 1; b < bucket_count; ++b)
        if (hist.buckets[b].known_in_top50 >= hist.buckets[best].known_in_top50) best = b;
    hist.max_coverage_bucket = best;
    hist.delta_min = hist.buckets[best].r_min;
    hist.delta_max = hist.buckets[best].r_max;
    return hist;
}

std::vector<ComboScore> select_candidates(const ComboStream& stream, double lo, double hi,
                                          std::optional<std::size_t> top_m) {
    if (!(lo <= hi)) throw ValidationError("range lower bound exceeds upper bound", "range");
    std::vector<ComboScore> inside, at_lo;
    double stream_min = std::numeric_limits<double>::infinity();
    stream.for_each([&](std::span<const NodeId> members, double value) {
        stream_min = std::min(stream_min, value);
        if (value > lo && value <= hi)
            inside.push_back(ComboScore{{members.begin(), members.end()}, value});
        else if (value == lo)
            at_lo.push_back(ComboScore{{members.begin(), members.end()}, value});
    });
    if (lo == stream_min) inside.insert(inside.end(), at_lo.begin(), at_lo.end());
    std::sort(inside.begin(), inside.end(), [](const ComboScore& a, const ComboScore& b) {
        return ranks_before(a.value, a.members, b.value, b.members);
    });
    if (top_m && inside.size() > *top_m) inside.resize(*top_m);
    return inside;
}

}  // namespace tcprof
