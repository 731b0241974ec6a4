#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "tcprof/error.hpp"
#include "tcprof/influence.hpp"
#include "tcprof/profiler.hpp"

using namespace tcprof;

namespace {

std::vector<NodeId> ids(std::initializer_list<std::uint32_t> v) {
    std::vector<NodeId> out;
    for (auto x : v) out.push_back(NodeId{x});
    return out;
}

/// The ten pairs of five nodes, valued 1..10 in lexicographic pair order.
std::vector<ComboScore> ten_pairs() {
    std::vector<ComboScore> out;
    double value = 1.0;
    for (const auto& s : oracle::k_subsets(5, 2)) out.push_back({ids({s[0], s[1]}), value++});
    return out;
}

KnownComboSet known_of(std::vector<std::vector<NodeId>> combos) {
    KnownComboSet k;
    k.k = static_cast<unsigned>(combos.front().size());
    std::sort(combos.begin(), combos.end());
    k.combos = std::move(combos);
    return k;
}

SourceDiffVector diffs_of(std::vector<double> values) {
    SourceDiffVector v;
    v.values = std::move(values);
    return v;
}

}  // namespace

TEST_CASE("known combinations come from single drugs") {
    const auto net = oracle::from_edges({"A", "B", "C", "G"}, {{"A", "G"}, {"B", "G"}, {"C", "G"}});
    auto ann = parse_annotations(net, "G\n", "d1\tA\nd1\tB\nd1\tC\n");
    const auto k3 = known_combos(ann, net, 2);
    CHECK(k3.combos == std::vector<std::vector<NodeId>>{ids({0, 1}), ids({0, 2}), ids({1, 2})});
    ann = parse_annotations(net, "G\n", "d1\tA\nd1\tB\nd2\tA\nd2\tB\n");
    CHECK(known_combos(ann, net, 2).size() == 1);
    ann = parse_annotations(net, "G\n", "d1\tA\nd2\tB\n");
    CHECK_THROWS_AS(known_combos(ann, net, 2), ValidationError);
    CHECK(known_combos(parse_annotations(net, "G\n", "d1\tA\nd1\tB\nd1\tC\n"), net, 3).size() == 1);
}

TEST_CASE("ten-combination fixture follows the bucket and rank rules") {
    const ListComboStream stream(ten_pairs());
    // value 10 is pair (3,4); value 1 is pair (0,1).
    const auto known = known_of({ids({3, 4}), ids({0, 1})});
    const auto h = build_delta_histogram(stream, known, {5, {50, 100}});
    REQUIRE(h.buckets.size() == 5);
    CHECK(h.total_combos == 10);
    CHECK(h.total_known == 2);
    const std::vector<double> bounds{1.0, 2.8, 4.6, 6.4, 8.2, 10.0};
    for (std::size_t b = 0; b < 5; ++b) {
        CHECK(h.buckets[b].r_min == doctest::Approx(bounds[b]));
        CHECK(h.buckets[b].r_max == doctest::Approx(bounds[b + 1]));
        CHECK(h.buckets[b].combo_count == 2);
    }
    // Top bucket {9, 10}: value 10 ranks first of two, inside ceil(0.5 * 2) = 1.
    CHECK(h.buckets[4].known_in_top[0] == 1);
    CHECK(h.buckets[4].percent[0] == 50.0);
    // Lowest bucket {1, 2}: value 1 ranks second of two, outside the top half.
    CHECK(h.buckets[0].known_in_top[0] == 0);
    CHECK(h.buckets[0].percent[0] == 0.0);
    CHECK(h.buckets[0].known_in_top[1] == 1);
    CHECK(h.buckets[0].percent[1] == 50.0);
    CHECK(h.max_coverage_bucket == 4);
    CHECK(h.delta_min == doctest::Approx(8.2));
    CHECK(h.delta_max == 10.0);
}

TEST_CASE("coverage ties go to the higher bucket") {
    const ListComboStream stream(ten_pairs());
    // value 10 (rank 1 of {9, 10}) and value 2 (rank 1 of {1, 2}) both sit in their top half.
    const auto known = known_of({ids({3, 4}), ids({0, 2})});
    const auto h = build_delta_histogram(stream, known, {5, {50}});
    CHECK(h.buckets[0].coverage == 50.0);
    CHECK(h.buckets[4].coverage == 50.0);
    CHECK(h.max_coverage_bucket == 4);
    const auto low_only = build_delta_histogram(stream, known_of({ids({0, 2})}), {5, {50}});
    CHECK(low_only.max_coverage_bucket == 0);
}

TEST_CASE("identical values form one degenerate bucket") {
    std::vector<ComboScore> combos;
    for (const auto& s : oracle::k_subsets(4, 2)) combos.push_back({ids({s[0], s[1]}), 0.5});
    const auto h = build_delta_histogram(ListComboStream(combos), known_of({ids({0, 1})}), {5, {50}});
    CHECK(h.degenerate);
    REQUIRE(h.buckets.size() == 1);
    CHECK(h.buckets[0].combo_count == 6);
    CHECK(h.buckets[0].coverage == 100.0);
    CHECK(h.delta_min == 0.5);
    CHECK(h.delta_max == 0.5);
}

TEST_CASE("parameter validation") {
    const ListComboStream stream(ten_pairs());
    const auto known = known_of({ids({0, 1})});
    CHECK_THROWS_AS(build_delta_histogram(stream, known, {1, {50}}), ValidationError);
    CHECK_THROWS_AS(build_delta_histogram(stream, known, {5, {0}}), ValidationError);
    CHECK_THROWS_AS(build_delta_histogram(stream, known, {5, {101}}), ValidationError);
    CHECK_THROWS_AS(build_delta_histogram(ListComboStream({}), known, {5, {50}}), ValidationError);
}

TEST_CASE("top rank limit is a ceiling") {
    CHECK(top_rank_limit(50, 2) == 1);
    CHECK(top_rank_limit(50, 3) == 2);
    CHECK(top_rank_limit(1, 1) == 1);
    CHECK(top_rank_limit(10, 100) == 10);
    CHECK(top_rank_limit(20, 115) == 23);
    CHECK(top_rank_limit(100, 7) == 7);
    CHECK(top_rank_limit(1, 0) == 0);
}

TEST_CASE("histogram statistics agree with a full sort on random streams") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint32_t n = 6 + rng() % 10;
        const unsigned k = 2 + rng() % 2;
        std::vector<double> values(n);
        // Coarse grid so equal values and boundary hits occur.
        for (auto& v : values) v = static_cast<double>(rng() % 9) / 4.0;
        const auto diffs = diffs_of(values);
        std::vector<oracle::Scored> all;
        std::vector<std::vector<std::uint32_t>> known_raw;
        std::vector<std::vector<NodeId>> known;
        for (const auto& s : oracle::k_subsets(n, k)) {
            double sum = 0;
            for (auto m : s) sum += values[m];
            all.push_back({s, sum / k});
            if (rng() % 4 == 0) {
                known_raw.push_back(s);
                std::vector<NodeId> m;
                for (auto x : s) m.push_back(NodeId{x});
                known.push_back(m);
            }
        }
        if (known.empty()) continue;
        const unsigned n_bucket = 2 + rng() % 6;
        const std::vector<double> levels{1, 10, 20, 50, 100};
        const auto h = build_delta_histogram(EnumeratedComboStream(diffs, k), known_of(known), {n_bucket, levels});
        if (h.degenerate) continue;
        CHECK(h.total_combos == all.size());
        std::uint64_t count_sum = 0, known_sum = 0;
        double pct100 = 0;
        for (const auto& b : h.buckets) {
            count_sum += b.combo_count;
            known_sum += b.known_in_bucket;
            pct100 += b.percent[4];
            CHECK(b.known_in_top[4] == b.known_in_bucket);
            for (std::size_t i = 1; i < levels.size(); ++i) CHECK(b.known_in_top[i - 1] <= b.known_in_top[i]);
        }
        CHECK(count_sum == all.size());
        CHECK(known_sum == known.size());
        CHECK(pct100 == doctest::Approx(100.0));
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const auto expected =
                oracle::known_in_top_bruteforce(all, known_raw, n_bucket, static_cast<unsigned>(levels[i]));
            for (unsigned b = 0; b < n_bucket; ++b) CHECK(h.buckets[b].known_in_top[i] == expected[b]);
        }
        // Threshold consistency.
        double best = -1;
        std::size_t best_i = 0;
        for (std::size_t b = 0; b < h.buckets.size(); ++b)
            if (h.buckets[b].coverage >= best) {
                best = h.buckets[b].coverage;
                best_i = b;
            }
        CHECK(h.max_coverage_bucket == best_i);
        CHECK(h.delta_min == h.buckets[best_i].r_min);
        CHECK(h.delta_max == h.buckets[best_i].r_max);
    }
}

TEST_CASE("placements carry brute-force ranks") {
    const ListComboStream stream(ten_pairs());
    const auto h = build_delta_histogram(stream, known_of({ids({3, 4}), ids({0, 1}), ids({2, 4})}), {5, {50}});
    REQUIRE(h.known.size() == 3);
    for (const auto& p : h.known) {
        CHECK(bucket_of(h, p.value) == p.bucket);
        CHECK(p.rank >= 1);
        CHECK(p.rank <= h.buckets[p.bucket].combo_count);
    }
    CHECK(h.known[0].bucket == 0);
    CHECK(h.known[0].rank == 2);
}

TEST_CASE("stream order does not change the histogram") {
    auto combos = ten_pairs();
    const auto known = known_of({ids({3, 4}), ids({0, 1})});
    const auto a = build_delta_histogram(ListComboStream(combos), known, {5, {10, 50}});
    std::reverse(combos.begin(), combos.end());
    const auto b = build_delta_histogram(ListComboStream(combos), known, {5, {10, 50}});
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(a.buckets[i].combo_count == b.buckets[i].combo_count);
        CHECK(a.buckets[i].known_in_top == b.buckets[i].known_in_top);
    }
}

TEST_CASE("equal values rank by ascending member tuple") {
    std::vector<ComboScore> combos{{ids({1, 2}), 1.0}, {ids({0, 3}), 1.0}, {ids({0, 1}), 0.0}};
    const auto h = build_delta_histogram(ListComboStream(combos), known_of({ids({1, 2})}), {2, {50}});
    // Top bucket holds the two 1.0 values; (0,3) outranks (1,2).
    REQUIRE(h.known.size() == 1);
    CHECK(h.known[0].rank == 2);
    CHECK(h.buckets[1].known_in_top[0] == 0);
    CHECK(ranks_before(1.0, ids({0, 3}), 1.0, ids({1, 2})));
    CHECK(ranks_before(2.0, ids({1, 2}), 1.0, ids({0, 3})));
}

TEST_CASE("bucket assignment honors boundaries") {
    const auto h = build_delta_histogram(ListComboStream(ten_pairs()), known_of({ids({0, 1})}), {5, {50}});
    CHECK(bucket_of(h, 1.0) == 0);
    CHECK(bucket_of(h, 2.8) == 0);
    CHECK(bucket_of(h, 2.8000001) == 1);
    CHECK(bucket_of(h, 10.0) == 4);
}

TEST_CASE("candidate selection") {
    const ListComboStream stream(ten_pairs());
    const auto all = select_candidates(stream, -INFINITY, INFINITY);
    REQUIRE(all.size() == 10);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].value > all[i].value);
    const auto h = build_delta_histogram(stream, known_of({ids({3, 4})}), {5, {50}});
    for (std::size_t b = 0; b < h.buckets.size(); ++b)
        CHECK(select_candidates(stream, h.buckets[b].r_min, h.buckets[b].r_max).size() == h.buckets[b].combo_count);
    const auto two = select_candidates(stream, h.buckets[2].r_min, h.buckets[3].r_max);
    CHECK(two.size() == h.buckets[2].combo_count + h.buckets[3].combo_count);
    CHECK(select_candidates(stream, 1.0, 10.0, 3).size() == 3);
    CHECK(select_candidates(stream, 20.0, 30.0).empty());
    CHECK_THROWS_AS(select_candidates(stream, 2.0, 1.0), ValidationError);
}
