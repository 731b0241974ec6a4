#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tcprof {

/// Dense index of an interned node symbol.
struct NodeId {
    std::uint32_t value = 0;

    constexpr std::size_t index() const noexcept { return value; }
    friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

enum class EdgeSign : std::int8_t { Activation = 1, Inhibition = -1 };

struct Edge {
    NodeId source;
    NodeId target;
    EdgeSign sign;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// One entry of an adjacency list: the node on the far side plus the edge sign.
struct Arc {
    NodeId node;
    EdgeSign sign;
};

/// Immutable directed signed graph with interned symbols and CSR adjacency in
/// both directions. Edge signs are carried for fidelity only; walks ignore them.
class SignalingNetwork {
public:
    SignalingNetwork() = default;

    /// Builds a network from already-interned symbols and edges. Rejects
    /// self-loops, out-of-range ids and repeated (source, target, sign) triples.
    SignalingNetwork(std::vector<std::string> symbols, std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return symbols_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const std::string& symbol(NodeId id) const { return symbols_.at(id.index()); }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    std::optional<NodeId> find(std::string_view symbol) const;

    std::span<const Arc> out_arcs(NodeId id) const;
    std::span<const Arc> in_arcs(NodeId id) const;
    std::size_t out_degree(NodeId id) const { return out_arcs(id).size(); }

    /// Edges in insertion order.
    std::span<const Edge> edges() const noexcept { return edges_; }

    bool has_edge(NodeId source, NodeId target) const;

    /// 64-bit FNV-1a over the canonical TSV serialization.
    std::uint64_t digest() const noexcept { return digest_; }

    /// Vertex-induced subgraph on `keep` (any order, deduplicated). Node ids are
    /// reassigned by ascending parent id; parent edge order is preserved.
    SignalingNetwork induced_subgraph(std::span<const NodeId> keep) const;

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> out_offsets_, in_offsets_;
    std::vector<Arc> out_arcs_, in_arcs_;
    std::uint64_t digest_ = 0;
};

struct IngestStats {
    std::size_t rows = 0;
    std::size_t neutral_dropped = 0;
    std::size_t duplicates = 0;
    std::size_t self_loops = 0;
};

struct LoadedNetwork {
    SignalingNetwork network;
    IngestStats stats;
};

/// Reads a `src<TAB>dst<TAB>sign` file. Sign 0 rows are dropped when
/// drop_neutral is set and rejected otherwise. `#!node<TAB>SYMBOL` lines pin
/// a node (and its id) even without incident edges; other `#` lines are comments.
LoadedNetwork load_network(const std::filesystem::path& edge_file, bool drop_neutral = true);
LoadedNetwork parse_network(std::string_view text, bool drop_neutral = true,
                            const std::string& origin = "<memory>");

/// Canonical TSV form: every node as a `#!node` directive in id order, then
/// edges in insertion order. Loading the output reproduces the same network.
std::string serialize_network(const SignalingNetwork& network);
void write_network(const SignalingNetwork& network, const std::filesystem::path& path);

struct UnresolvedSymbol {
    std::string source;  // "oncogenes" or "drug_targets"
    std::string symbol;
    std::string drug;    // empty for oncogene rows
};

struct AnnotationSets {
    std::vector<NodeId> oncogenes;  // sorted, unique
    std::vector<NodeId> targets;    // sorted, unique; union of all drug targets
    std::map<std::string, std::vector<NodeId>> drugs;
    std::vector<UnresolvedSymbol> unresolved;
};

/// Resolves a one-symbol-per-line gene list; unresolved symbols are appended
/// to `unresolved` when given. Throws ValidationError when nothing resolves.
std::vector<NodeId> parse_gene_set(const SignalingNetwork& network, std::string_view text,
                                   std::vector<UnresolvedSymbol>* unresolved = nullptr);
std::vector<NodeId> load_gene_set(const SignalingNetwork& network, const std::filesystem::path& path,
                                  std::vector<UnresolvedSymbol>* unresolved = nullptr);

AnnotationSets load_annotations(const SignalingNetwork& network,
                                const std::filesystem::path& oncogene_file,
                                const std::filesystem::path& drug_target_file);
AnnotationSets parse_annotations(const SignalingNetwork& network, std::string_view oncogene_text,
                                 std::string_view drug_target_text);

/// Maps annotation sets from `parent` onto `child` by symbol. Nodes missing
/// from the child are dropped silently; drugs keep their (possibly empty) sets.
AnnotationSets project_annotations(const AnnotationSets& annotations,
                                   const SignalingNetwork& parent,
                                   const SignalingNetwork& child);

std::string unresolved_report_json(const AnnotationSets& annotations);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL) noexcept;
std::string hex_digest(std::uint64_t digest);

}  // namespace tcprof

template <>
struct std::hash<tcprof::NodeId> {
    std::size_t operator()(tcprof::NodeId id) const noexcept { return id.value; }
};
