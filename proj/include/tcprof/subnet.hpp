#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "tcprof/graph.hpp"

namespace tcprof {

struct SubnetSpec {
    std::vector<NodeId> targets;
    std::vector<NodeId> oncogenes;
    unsigned path_length_threshold = 5;

    void validate(const SignalingNetwork& network) const;
};

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Multi-source BFS hop counts along out-edges (or in-edges when `reverse`).
std::vector<std::uint32_t> bfs_distances(const SignalingNetwork& network,
                                         std::span<const NodeId> sources, bool reverse = false);

/// Nodes v with min_u dist(u, v) + min_w dist(v, w) < d over targets u and
/// oncogenes w, i.e. every node on some directed walk of fewer than d edges
/// from a target to an oncogene. Ascending order.
std::vector<NodeId> subnet_members(const SignalingNetwork& network, const SubnetSpec& spec);

/// Vertex-induced subgraph on subnet_members(). Throws ValidationError when
/// no target reaches any oncogene within the threshold.
SignalingNetwork build_subnetwork(const SignalingNetwork& network, const SubnetSpec& spec);

}  // namespace tcprof
