#include "tcprof/perturb.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

#include "tcprof/error.hpp"

namespace tcprof {

namespace {

std::uint64_t pair_key(std::size_t source, std::size_t target) {
    return (std::uint64_t{source} << 32) | std::uint64_t{target};
}

EdgeSign random_sign(std::mt19937_64& rng) {
    return uniform_below(rng, 2) == 0 ? EdgeSign::Activation : EdgeSign::Inhibition;
}

}  // namespace

std::string_view perturb_mode_name(PerturbMode mode) { return mode == PerturbMode::Add ? "add" : "remove"; }

PerturbMode parse_perturb_mode(std::string_view name) {
    if (name == "add") return PerturbMode::Add;
    if (name == "remove") return PerturbMode::Remove;
    throw ValidationError("unknown perturbation mode '" + std::string(name) + "' (expected add or remove)", "mode");
}

std::size_t perturbed_edge_count(std::size_t edge_count, double fraction) {
    const double exact = fraction * static_cast<double>(edge_count);
    return static_cast<std::size_t>(std::floor(exact + 1e-9 * std::max(1.0, exact)));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold) return x % bound;
    }
}

SignalingNetwork perturb(const SignalingNetwork& network, const PerturbSpec& spec) {
    if (!(spec.fraction > 0.0 && spec.fraction <= 1.0))
        throw ValidationError("perturbation fraction must lie in (0, 1]", "fraction");
    const auto e = network.edge_count();
    const auto n = network.node_count();
    const auto count = perturbed_edge_count(e, spec.fraction);
    if (count == 0)
        throw ValidationError("fraction " + std::to_string(spec.fraction) + " of " + std::to_string(e) +
                                  " edges rounds down to zero",
                              "fraction");

    std::mt19937_64 rng(spec.seed);
    const auto old_edges = network.edges();

    if (spec.mode == PerturbMode::Remove) {
        std::vector<std::size_t> order(e);
        for (std::size_t i = 0; i < e; ++i) order[i] = i;
        for (std::size_t i = 0; i < count; ++i) std::swap(order[i], order[i + uniform_below(rng, e - i)]);
        std::vector<char> removed(e, 0);
        for (std::size_t i = 0; i < count; ++i) removed[order[i]] = 1;
        std::vector<Edge> kept;
        kept.reserve(e - count);
        for (std::size_t i = 0; i < e; ++i)
            if (!removed[i]) kept.push_back(old_edges[i]);
        return SignalingNetwork(network.symbols(), std::move(kept));
    }

    std::unordered_set<std::uint64_t> present;
    for (const auto& edge : old_edges) present.insert(pair_key(edge.source.index(), edge.target.index()));
    const std::uint64_t all_pairs = std::uint64_t{n} * (n > 0 ? n - 1 : 0);
    const std::uint64_t absent = all_pairs - present.size();
    if (count > absent)
        throw ValidationError("cannot add " + std::to_string(count) + " edges: only " + std::to_string(absent) +
                                  " unconnected ordered pairs remain",
                              "fraction");

    std::vector<Edge> edges(old_edges.begin(), old_edges.end());
    edges.reserve(e + count);
    auto make_edge = [](std::size_t s, std::size_t t, EdgeSign sign) {
        return Edge{NodeId{static_cast<std::uint32_t>(s)}, NodeId{static_cast<std::uint32_t>(t)}, sign};
    };

    if (2 * absent >= all_pairs) {
        // Sparse: rejection sampling touches few occupied pairs.
        std::unordered_set<std::uint64_t> chosen;
        while (chosen.size() < count) {
            const auto s = uniform_below(rng, n);
            auto t = uniform_below(rng, n - 1);
            if (t >= s) ++t;
            const auto key = pair_key(s, t);
            if (present.count(key) || !chosen.insert(key).second) continue;
            edges.push_back(make_edge(s, t, random_sign(rng)));
        }
    } else {
        std::vector<std::uint64_t> candidates;
        candidates.reserve(absent);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t)
                if (s != t && !present.count(pair_key(s, t))) candidates.push_back(pair_key(s, t));
        for (std::size_t i = 0; i < count; ++i) {
            std::swap(candidates[i], candidates[i + uniform_below(rng, candidates.size() - i)]);
            edges.push_back(make_edge(candidates[i] >> 32, candidates[i] & 0xffffffffu, random_sign(rng)));
        }
    }
    return SignalingNetwork(network.symbols(), std::move(edges));
}

std::vector<NoiseRun> noise_study(const SignalingNetwork& network, const std::vector<NodeId>& oncogenes,
                                  const KnownComboSet& known, const AnalysisParams& params,
                                  const std::vector<double>& fractions, const std::vector<PerturbMode>& modes,
                                  const std::vector<std::uint64_t>& seeds, const Executor& executor) {
    params.validate();
    if (fractions.empty() || modes.empty() || seeds.empty())
        throw ValidationError("noise study needs at least one fraction, mode and seed");
    std::vector<NoiseRun> runs;
    for (const auto mode : modes)
        for (const auto fraction : fractions)
            for (const auto seed : seeds) runs.push_back(NoiseRun{mode, fraction, seed, 0, 0, {}});

    executor.for_each_index(runs.size(), [&](std::size_t i) {
        auto& run = runs[i];
        const auto perturbed =
            run.fraction == 0.0 ? network : perturb(network, PerturbSpec{run.mode, run.fraction, run.seed});
        run.network_digest = perturbed.digest();
        run.edge_count = perturbed.edge_count();
        run.histogram = analyze(perturbed, oncogenes, known, params, Executor{1}).histogram;
    });
    return runs;
}

}  // namespace tcprof
