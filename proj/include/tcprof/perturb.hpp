#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "tcprof/analysis.hpp"
#include "tcprof/executor.hpp"
#include "tcprof/graph.hpp"

namespace tcprof {

enum class PerturbMode { Add, Remove };

std::string_view perturb_mode_name(PerturbMode mode);
PerturbMode parse_perturb_mode(std::string_view name);

struct PerturbSpec {
    PerturbMode mode = PerturbMode::Remove;
    double fraction = 0.01;  // (0, 1]
    std::uint64_t seed = 0;
};

/// floor(fraction * edge_count), guarded against binary round-off just below an integer.
std::size_t perturbed_edge_count(std::size_t edge_count, double fraction);

/// Uniform integer in [0, bound) from a 64-bit Mersenne Twister by rejection,
/// so the sequence is identical on every conforming platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Removes or adds floor(fraction * |E|) distinct edges chosen uniformly. Added
/// edges join previously unconnected ordered pairs (no self-loops) with a sign
/// drawn uniformly. The node set is unchanged.
SignalingNetwork perturb(const SignalingNetwork& network, const PerturbSpec& spec);

struct NoiseRun {
    PerturbMode mode = PerturbMode::Remove;
    double fraction = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t network_digest = 0;
    std::size_t edge_count = 0;
    DeltaHistogram histogram;
};

/// Full analysis for every (mode, fraction, seed). A zero fraction analyzes the
/// network unchanged. Runs are independent and spread over the executor.
std::vector<NoiseRun> noise_study(const SignalingNetwork& network, const std::vector<NodeId>& oncogenes,
                                  const KnownComboSet& known, const AnalysisParams& params,
                                  const std::vector<double>& fractions, const std::vector<PerturbMode>& modes,
                                  const std::vector<std::uint64_t>& seeds, const Executor& executor = Executor{});

}  // namespace tcprof
