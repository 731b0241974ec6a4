#include <doctest.h>

#include "oracles.hpp"
#include "tcprof/analysis.hpp"
#include "tcprof/baselines.hpp"
#include "tcprof/error.hpp"
#include "tcprof/io.hpp"
#include "tcprof/ppr.hpp"

using namespace tcprof;

TEST_CASE("ppr diff on the chain in both orientations") {
    const auto net = oracle::chain3();
    const auto ppr = ppr_all_pairs(net);
    const std::vector<NodeId> genes{NodeId{2}};
    const auto rest_first = ppr_diff_vector(ppr, genes, DiffOrientation::RestMinusGenes);
    CHECK(rest_first.values[0] == doctest::Approx(0.18 - 0.64).epsilon(1e-12));
    CHECK(format_fixed(rest_first.values[0], 2) == "-0.46");
    const auto genes_first = ppr_diff_vector(ppr, genes);
    CHECK(genes_first.values[0] == doctest::Approx(0.46).epsilon(1e-12));
    CHECK(genes_first.measure == MeasureTag::PprDiff);
}

TEST_CASE("ppr diff of an isolated node has a closed form") {
    const auto net = oracle::from_edges({"u", "a", "b"}, {{"a", "b"}});
    const auto ppr = ppr_all_pairs(net);
    const std::vector<NodeId> genes{NodeId{2}};
    // rest = {u, a}: mean(1, 0) = 0.5; gene mean 0.
    CHECK(ppr_diff_vector(ppr, genes, DiffOrientation::RestMinusGenes).values[0] == doctest::Approx(0.5));
}

TEST_CASE("distance diff on the chain") {
    const auto net = oracle::chain3();
    const std::vector<NodeId> genes{NodeId{2}};
    CHECK(distance_diff_vector(net, genes).values[0] == doctest::Approx(-1.5));
}

TEST_CASE("unreachable genes take the node-count sentinel") {
    const auto net = oracle::from_edges({"s", "a", "g", "h"}, {{"s", "a"}, {"g", "h"}});
    const auto hops = shortest_path_matrix(net);
    CHECK(hops(0, 2) == 4.0);
    CHECK(hops(0, 1) == 1.0);
    const std::vector<NodeId> genes{NodeId{2}};
    // rest = {s, a, h}: (0 + 1 + 4) / 3; gene side 4.
    CHECK(distance_diff_vector(net, genes).values[0] == doctest::Approx(5.0 / 3.0 - 4.0));
    CHECK(shortest_path_matrix(net, 99.0)(0, 2) == 99.0);
}

TEST_CASE("hop counts match an independent BFS and the sentinel dominates") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto net = oracle::random_digraph(seed, 3, 15, 0.15);
        const auto ours = shortest_path_matrix(net);
        const auto ref = oracle::hop_counts(net, static_cast<double>(net.node_count()));
        CHECK(ours == ref);
        for (std::size_t s = 0; s < net.node_count(); ++s)
            for (std::size_t t = 0; t < net.node_count(); ++t)
                if (ref(s, t) < static_cast<double>(net.node_count())) CHECK(ref(s, t) <= net.node_count() - 1.0);
    }
}

TEST_CASE("baseline diffs feed the histogram unchanged") {
    const auto net = oracle::random_digraph(31, 10, 10, 0.3);
    const std::vector<NodeId> genes{NodeId{1}, NodeId{4}};
    KnownComboSet known;
    known.combos = {{NodeId{0}, NodeId{2}}, {NodeId{3}, NodeId{5}}};
    for (auto tag : {MeasureTag::PenDiff, MeasureTag::PprDiff, MeasureTag::DistanceDiff}) {
        AnalysisParams params;
        params.measure = tag;
        const auto result = analyze(net, genes, known, params);
        std::uint64_t total = 0;
        for (const auto& b : result.histogram.buckets) total += b.combo_count;
        CHECK(total == 45);
        CHECK(result.histogram.measure == tag);
    }
}

TEST_CASE("exploration size ratio") {
    const auto breast = esr(std::map<MeasureTag, std::uint64_t>{{MeasureTag::PenDiff, 226'049},
                                                                 {MeasureTag::PprDiff, 539'293}});
    CHECK(breast.entries.at(MeasureTag::PenDiff).ratio == 1.0);
    CHECK(format_fixed(breast.entries.at(MeasureTag::PprDiff).ratio, 2) == "2.39");
    const auto prostate = esr(std::map<MeasureTag, std::uint64_t>{{MeasureTag::PenDiff, 122'070},
                                                                   {MeasureTag::PprDiff, 1'131'200}});
    CHECK(format_fixed(prostate.entries.at(MeasureTag::PprDiff).ratio, 2) == "9.27");
    const auto csv = breast.csv();
    CHECK(csv.find("pen,226049,1.00") != std::string::npos);
    CHECK(csv.find("ppr,539293,2.39") != std::string::npos);
    CHECK_THROWS_AS(esr(std::map<MeasureTag, std::uint64_t>{{MeasureTag::PprDiff, 5}}), ValidationError);
}

TEST_CASE("exploration size ratio is scale free") {
    const auto a = esr(std::map<MeasureTag, std::uint64_t>{{MeasureTag::PenDiff, 300}, {MeasureTag::DistanceDiff, 700}});
    const auto b = esr(std::map<MeasureTag, std::uint64_t>{{MeasureTag::PenDiff, 3000}, {MeasureTag::DistanceDiff, 7000}});
    CHECK(a.entries.at(MeasureTag::DistanceDiff).ratio == b.entries.at(MeasureTag::DistanceDiff).ratio);
}
