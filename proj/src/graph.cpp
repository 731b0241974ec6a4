#include "tcprof/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "tcprof/error.hpp"
#include "tcprof/io.hpp"

namespace tcprof {

namespace {

constexpr std::string_view kNodeDirective = "#!node";

std::uint64_t edge_key(NodeId source, NodeId target, EdgeSign sign) {
    return (std::uint64_t{source.value} << 33) | (std::uint64_t{target.value} << 1) |
           (sign == EdgeSign::Activation ? 1u : 0u);
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        fields.push_back(trim(line.substr(start, tab - start)));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return fields;
}

/// Calls fn(line_number, line) for every line with the trailing CR removed.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        fn(++line_no, line);
        start = end + 1;
    }
}

std::optional<int> parse_sign(std::string_view field) {
    if (field == "1" || field == "+1") return 1;
    if (field == "-1") return -1;
    if (field == "0" || field == "+0" || field == "-0") return 0;
    return std::nullopt;
}

class Interner {
public:
    NodeId intern(std::string_view symbol) {
        auto [it, inserted] = index_.try_emplace(std::string(symbol), NodeId{0});
        if (inserted) {
            it->second = NodeId{static_cast<std::uint32_t>(symbols_.size())};
            symbols_.emplace_back(symbol);
        }
        return it->second;
    }

    std::vector<std::string> release() { return std::move(symbols_); }

private:
    std::unordered_map<std::string, NodeId> index_;
    std::vector<std::string> symbols_;
};

void build_csr(std::size_t n, const std::vector<Edge>& edges, bool outgoing,
               std::vector<std::size_t>& offsets, std::vector<Arc>& arcs) {
    offsets.assign(n + 1, 0);
    for (const auto& e : edges) ++offsets[(outgoing ? e.source : e.target).index() + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    arcs.resize(edges.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& e : edges) {
        const auto from = outgoing ? e.source : e.target;
        const auto to = outgoing ? e.target : e.source;
        arcs[cursor[from.index()]++] = Arc{to, e.sign};
    }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) noexcept {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex_digest(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

SignalingNetwork::SignalingNetwork(std::vector<std::string> symbols, std::vector<Edge> edges)
    : symbols_(std::move(symbols)), edges_(std::move(edges)) {
    const auto n = symbols_.size();
    index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!index_.emplace(symbols_[i], NodeId{static_cast<std::uint32_t>(i)}).second)
            throw ValidationError("duplicate node symbol '" + symbols_[i] + "'");
    }
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size());
    for (const auto& e : edges_) {
        if (e.source.index() >= n || e.target.index() >= n)
            throw ValidationError("edge endpoint out of range");
        if (e.source == e.target)
            throw ValidationError("self-loop on '" + symbols_[e.source.index()] + "'");
        if (!seen.insert(edge_key(e.source, e.target, e.sign)).second)
            throw ValidationError("duplicate edge " + symbols_[e.source.index()] + " -> " +
                                  symbols_[e.target.index()]);
    }
    build_csr(n, edges_, true, out_offsets_, out_arcs_);
    build_csr(n, edges_, false, in_offsets_, in_arcs_);
    digest_ = fnv1a64(serialize_network(*this));
}

std::optional<NodeId> SignalingNetwork::find(std::string_view symbol) const {
    const auto it = index_.find(std::string(symbol));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::span<const Arc> SignalingNetwork::out_arcs(NodeId id) const {
    const auto i = id.index();
    return std::span<const Arc>(out_arcs_).subspan(out_offsets_.at(i), out_offsets_[i + 1] - out_offsets_[i]);
}

std::span<const Arc> SignalingNetwork::in_arcs(NodeId id) const {
    const auto i = id.index();
    return std::span<const Arc>(in_arcs_).subspan(in_offsets_.at(i), in_offsets_[i + 1] - in_offsets_[i]);
}

bool SignalingNetwork::has_edge(NodeId source, NodeId target) const {
    for (const auto& arc : out_arcs(source))
        if (arc.node == target) return true;
    return false;
}

SignalingNetwork SignalingNetwork::induced_subgraph(std::span<const NodeId> keep) const {
    std::vector<NodeId> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    constexpr auto kAbsent = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> remap(node_count(), kAbsent);
    std::vector<std::string> symbols;
    symbols.reserve(sorted.size());
    for (const auto id : sorted) {
        remap.at(id.index()) = static_cast<std::uint32_t>(symbols.size());
        symbols.push_back(symbols_[id.index()]);
    }
    std::vector<Edge> edges;
    for (const auto& e : edges_) {
        const auto s = remap[e.source.index()];
        const auto t = remap[e.target.index()];
        if (s != kAbsent && t != kAbsent) edges.push_back(Edge{NodeId{s}, NodeId{t}, e.sign});
    }
    return SignalingNetwork(std::move(symbols), std::move(edges));
}

LoadedNetwork parse_network(std::string_view text, bool drop_neutral, const std::string& origin) {
    Interner interner;
    IngestStats stats;
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;

    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        if (trim(line).empty()) return;
        if (line.starts_with(kNodeDirective)) {
            const auto fields = split_tabs(line);
            if (fields.size() != 2 || fields[0] != kNodeDirective || fields[1].empty())
                throw ParseError(origin, line_no, "malformed node directive");
            interner.intern(fields[1]);
            return;
        }
        if (line.front() == '#') return;

        const auto fields = split_tabs(line);
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty())
            throw ParseError(origin, line_no, "expected src<TAB>dst<TAB>sign");
        const auto sign = parse_sign(fields[2]);
        if (!sign) throw ParseError(origin, line_no, "sign must be +1, -1 or 0");
        ++stats.rows;
        if (*sign == 0) {
            if (!drop_neutral) throw ParseError(origin, line_no, "neutral link present but not dropped");
            ++stats.neutral_dropped;
            return;
        }
        if (fields[0] == fields[1]) {
            ++stats.self_loops;
            return;
        }
        const auto src = interner.intern(fields[0]);
        const auto dst = interner.intern(fields[1]);
        const auto edge_sign = *sign > 0 ? EdgeSign::Activation : EdgeSign::Inhibition;
        if (!seen.insert(edge_key(src, dst, edge_sign)).second) {
            ++stats.duplicates;
            return;
        }
        edges.push_back(Edge{src, dst, edge_sign});
    });

    if (edges.empty()) throw ValidationError("no signal edges retained from " + origin);
    return LoadedNetwork{SignalingNetwork(interner.release(), std::move(edges)), stats};
}

LoadedNetwork load_network(const std::filesystem::path& edge_file, bool drop_neutral) {
    return parse_network(read_text_file(edge_file), drop_neutral, edge_file.string());
}

std::string serialize_network(const SignalingNetwork& network) {
    std::string out;
    for (const auto& symbol : network.symbols()) {
        out += kNodeDirective;
        out += '\t';
        out += symbol;
        out += '\n';
    }
    for (const auto& e : network.edges()) {
        out += network.symbol(e.source);
        out += '\t';
        out += network.symbol(e.target);
        out += e.sign == EdgeSign::Activation ? "\t1\n" : "\t-1\n";
    }
    return out;
}

void write_network(const SignalingNetwork& network, const std::filesystem::path& path) {
    write_text_file(path, serialize_network(network));
}

namespace {

std::vector<NodeId> resolve_genes(const SignalingNetwork& network, std::string_view text,
                                  std::vector<UnresolvedSymbol>* unresolved) {
    std::set<NodeId> genes;
    std::set<std::string, std::less<>> reported;
    for_each_line(text, [&](std::size_t, std::string_view line) {
        const auto symbol = trim(line);
        if (symbol.empty() || symbol.front() == '#') return;
        if (const auto id = network.find(symbol)) {
            genes.insert(*id);
        } else if (reported.insert(std::string(symbol)).second && unresolved) {
            unresolved->push_back({"oncogenes", std::string(symbol), {}});
        }
    });
    return {genes.begin(), genes.end()};
}

}  // namespace

std::vector<NodeId> parse_gene_set(const SignalingNetwork& network, std::string_view text,
                                   std::vector<UnresolvedSymbol>* unresolved) {
    auto genes = resolve_genes(network, text, unresolved);
    if (genes.empty()) throw ValidationError("no oncogene resolves to a network node", "oncogenes");
    return genes;
}

std::vector<NodeId> load_gene_set(const SignalingNetwork& network, const std::filesystem::path& path,
                                  std::vector<UnresolvedSymbol>* unresolved) {
    return parse_gene_set(network, read_text_file(path), unresolved);
}

AnnotationSets parse_annotations(const SignalingNetwork& network, std::string_view oncogene_text,
                                 std::string_view drug_target_text) {
    AnnotationSets sets;
    std::set<NodeId> targets;
    std::set<std::string> reported;
    sets.oncogenes = resolve_genes(network, oncogene_text, &sets.unresolved);

    std::map<std::string, std::set<NodeId>> drugs;
    for_each_line(drug_target_text, [&](std::size_t line_no, std::string_view line) {
        if (trim(line).empty() || line.front() == '#') return;
        const auto fields = split_tabs(line);
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            throw ParseError("drug-target file", line_no, "expected drug_id<TAB>target_symbol");
        auto& drug = drugs[std::string(fields[0])];
        if (const auto id = network.find(fields[1])) {
            drug.insert(*id);
            targets.insert(*id);
        } else if (reported.insert("t:" + std::string(fields[0]) + "\t" + std::string(fields[1])).second) {
            sets.unresolved.push_back({"drug_targets", std::string(fields[1]), std::string(fields[0])});
        }
    });

    sets.targets.assign(targets.begin(), targets.end());
    for (auto& [drug, ids] : drugs) sets.drugs.emplace(drug, std::vector<NodeId>(ids.begin(), ids.end()));

    if (sets.oncogenes.empty()) throw ValidationError("no oncogene resolves to a network node", "oncogenes");
    if (sets.targets.empty()) throw ValidationError("no drug target resolves to a network node", "drug_targets");
    return sets;
}

AnnotationSets load_annotations(const SignalingNetwork& network,
                                const std::filesystem::path& oncogene_file,
                                const std::filesystem::path& drug_target_file) {
    return parse_annotations(network, read_text_file(oncogene_file), read_text_file(drug_target_file));
}

AnnotationSets project_annotations(const AnnotationSets& annotations,
                                   const SignalingNetwork& parent,
                                   const SignalingNetwork& child) {
    auto project = [&](const std::vector<NodeId>& ids) {
        std::vector<NodeId> out;
        for (const auto id : ids)
            if (const auto mapped = child.find(parent.symbol(id))) out.push_back(*mapped);
        std::sort(out.begin(), out.end());
        return out;
    };
    AnnotationSets projected;
    projected.oncogenes = project(annotations.oncogenes);
    projected.targets = project(annotations.targets);
    for (const auto& [drug, ids] : annotations.drugs) projected.drugs.emplace(drug, project(ids));
    projected.unresolved = annotations.unresolved;
    return projected;
}

std::string unresolved_report_json(const AnnotationSets& annotations) {
    auto list = nlohmann::json::array();
    for (const auto& u : annotations.unresolved) {
        nlohmann::json entry{{"source", u.source}, {"symbol", u.symbol}};
        if (!u.drug.empty()) entry["drug"] = u.drug;
        list.push_back(std::move(entry));
    }
    return list.dump(2) + "\n";
}

}  // namespace tcprof
