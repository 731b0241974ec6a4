#include "tcprof/subnet.hpp"

#include <deque>

#include "tcprof/error.hpp"

namespace tcprof {

void SubnetSpec::validate(const SignalingNetwork& network) const {
    if (path_length_threshold < 2)
        throw ValidationError("path length threshold must be at least 2", "d");
    if (targets.empty()) throw ValidationError("target set is empty", "targets");
    if (oncogenes.empty()) throw ValidationError("oncogene set is empty", "oncogenes");
    for (const auto* set : {&targets, &oncogenes})
        for (const auto id : *set)
            if (id.index() >= network.node_count())
                throw ValidationError("annotation node outside the network");
}

std::vector<std::uint32_t> bfs_distances(const SignalingNetwork& network,
                                         std::span<const NodeId> sources, bool reverse) {
    std::vector<std::uint32_t> dist(network.node_count(), kUnreachable);
    std::deque<NodeId> queue;
    for (const auto s : sources) {
        if (dist.at(s.index()) != 0) {
            dist[s.index()] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        const auto next = dist[u.index()] + 1;
        for (const auto& arc : reverse ? network.in_arcs(u) : network.out_arcs(u)) {
            if (dist[arc.node.index()] == kUnreachable) {
                dist[arc.node.index()] = next;
                queue.push_back(arc.node);
            }
        }
    }
    return dist;
}

std::vector<NodeId> subnet_members(const SignalingNetwork& network, const SubnetSpec& spec) {
    spec.validate(network);
    const auto from_targets = bfs_distances(network, spec.targets);
    const auto to_oncogenes = bfs_distances(network, spec.oncogenes, /*reverse=*/true);

    std::vector<NodeId> members;
    for (std::size_t v = 0; v < network.node_count(); ++v) {
        if (from_targets[v] == kUnreachable || to_oncogenes[v] == kUnreachable) continue;
        if (std::uint64_t{from_targets[v]} + to_oncogenes[v] < spec.path_length_threshold)
            members.push_back(NodeId{static_cast<std::uint32_t>(v)});
    }
    return members;
}

SignalingNetwork build_subnetwork(const SignalingNetwork& network, const SubnetSpec& spec) {
    const auto members = subnet_members(network, spec);
    if (members.empty())
        throw ValidationError("no target reaches an oncogene along a path shorter than d=" +
                                  std::to_string(spec.path_length_threshold),
                              "d");
    return network.induced_subgraph(members);
}

}  // namespace tcprof
