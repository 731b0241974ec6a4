#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>

#include <Eigen/Dense>

namespace oracle {

using tcprof::DenseMatrix;
using tcprof::Edge;
using tcprof::EdgeSign;
using tcprof::NodeId;
using tcprof::SignalingNetwork;

SignalingNetwork random_digraph(std::uint64_t seed, std::size_t min_nodes, std::size_t max_nodes,
                                double edge_probability) {
    std::mt19937_64 rng(seed);
    const std::size_t n = min_nodes + rng() % (max_nodes - min_nodes + 1);
    std::bernoulli_distribution coin(edge_probability), sign(0.5);
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < n; ++i) symbols.push_back("N" + std::to_string(i));
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = 0; v < n; ++v)
            if (u != v && coin(rng))
                edges.push_back({NodeId{u}, NodeId{v}, sign(rng) ? EdgeSign::Activation : EdgeSign::Inhibition});
    return SignalingNetwork(std::move(symbols), std::move(edges));
}

SignalingNetwork from_edges(const std::vector<std::string>& symbols,
                            const std::vector<std::pair<std::string, std::string>>& edges) {
    std::map<std::string, std::uint32_t> id;
    for (std::uint32_t i = 0; i < symbols.size(); ++i) id[symbols[i]] = i;
    std::vector<Edge> out;
    for (const auto& [a, b] : edges) out.push_back({NodeId{id.at(a)}, NodeId{id.at(b)}, EdgeSign::Activation});
    return SignalingNetwork(symbols, std::move(out));
}

SignalingNetwork chain3() { return from_edges({"s", "a", "t"}, {{"s", "a"}, {"a", "t"}}); }

DenseMatrix ppr_linear_solve(const SignalingNetwork& net, double alpha) {
    const auto n = static_cast<Eigen::Index>(net.node_count());
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd stop(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        const auto arcs = net.out_arcs(NodeId{u});
        stop[u] = arcs.empty() ? 1.0 : alpha;
        for (const auto& arc : arcs) system(u, arc.node.value) -= (1.0 - alpha) / static_cast<double>(arcs.size());
    }
    const Eigen::MatrixXd visits = system.fullPivLu().inverse();
    DenseMatrix out(net.node_count());
    for (Eigen::Index s = 0; s < n; ++s)
        for (Eigen::Index t = 0; t < n; ++t) out(s, t) = visits(s, t) * stop[t];
    return out;
}

MonteCarloEstimate ppr_monte_carlo(const SignalingNetwork& net, double alpha, std::uint64_t walks_per_source,
                                   std::uint64_t seed) {
    const std::size_t n = net.node_count();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MonteCarloEstimate est{DenseMatrix(n), std::vector<std::uint64_t>(n, walks_per_source)};
    for (std::uint32_t s = 0; s < n; ++s) {
        std::vector<std::uint64_t> hits(n, 0);
        for (std::uint64_t w = 0; w < walks_per_source; ++w) {
            std::uint32_t at = s;
            for (;;) {
                const auto arcs = net.out_arcs(NodeId{at});
                if (arcs.empty() || unit(rng) < alpha) break;
                at = arcs[std::uniform_int_distribution<std::size_t>(0, arcs.size() - 1)(rng)].node.value;
            }
            ++hits[at];
        }
        for (std::size_t t = 0; t < n; ++t)
            est.mean(s, t) = static_cast<double>(hits[t]) / static_cast<double>(walks_per_source);
    }
    return est;
}

DenseMatrix pen_from_ppr(const SignalingNetwork& net, const DenseMatrix& ppr, double eps) {
    DenseMatrix out(net.node_count());
    for (std::uint32_t s = 0; s < net.node_count(); ++s) {
        const double deg = static_cast<double>(net.out_arcs(NodeId{s}).size());
        for (std::uint32_t t = 0; t < net.node_count(); ++t)
            out(s, t) = s == t ? 0.0 : 1.0 - std::log(ppr(s, t) * deg + eps);
    }
    return out;
}

DenseMatrix hop_counts(const SignalingNetwork& net, double sentinel) {
    const std::size_t n = net.node_count();
    DenseMatrix out(n, sentinel);
    for (std::uint32_t s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1);
        std::deque<std::uint32_t> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            const auto u = queue.front();
            queue.pop_front();
            for (const auto& arc : net.out_arcs(NodeId{u}))
                if (dist[arc.node.value] < 0) {
                    dist[arc.node.value] = dist[u] + 1;
                    queue.push_back(arc.node.value);
                }
        }
        for (std::size_t t = 0; t < n; ++t)
            if (dist[t] >= 0) out(s, t) = dist[t];
    }
    return out;
}

double literal_block_diff(const DenseMatrix& m, const std::vector<std::uint32_t>& members,
                          const std::vector<std::uint32_t>& genes, bool rest_minus_genes) {
    std::vector<bool> is_gene(m.size(), false);
    for (auto g : genes) is_gene[g] = true;
    // Build the two blocks explicitly, then average each block as a whole.
    std::vector<std::vector<double>> rest_block, gene_block;
    for (auto s : members) {
        std::vector<double> rest_row, gene_row;
        for (std::uint32_t t = 0; t < m.size(); ++t) (is_gene[t] ? gene_row : rest_row).push_back(m(s, t));
        rest_block.push_back(rest_row);
        gene_block.push_back(gene_row);
    }
    auto block_mean = [](const std::vector<std::vector<double>>& block) {
        long double sum = 0;
        std::size_t cells = 0;
        for (const auto& row : block)
            for (double v : row) {
                sum += v;
                ++cells;
            }
        return static_cast<double>(sum / static_cast<long double>(cells));
    };
    const double d_rest = block_mean(rest_block), d_genes = block_mean(gene_block);
    return rest_minus_genes ? d_rest - d_genes : d_genes - d_rest;
}

std::vector<std::uint32_t> simple_path_nodes(const SignalingNetwork& net, const std::vector<std::uint32_t>& targets,
                                             const std::vector<std::uint32_t>& oncogenes, unsigned d) {
    std::vector<bool> is_onc(net.node_count(), false), on_path(net.node_count(), false), in_path(net.node_count());
    for (auto o : oncogenes) is_onc[o] = true;
    std::vector<std::uint32_t> path;
    std::function<void(std::uint32_t)> dfs = [&](std::uint32_t u) {
        path.push_back(u);
        in_path[u] = true;
        if (is_onc[u])
            for (auto v : path) on_path[v] = true;
        if (path.size() < d)  // path.size() - 1 edges so far; one more keeps it below d
            for (const auto& arc : net.out_arcs(NodeId{u}))
                if (!in_path[arc.node.value]) dfs(arc.node.value);
        in_path[u] = false;
        path.pop_back();
    };
    for (auto t : targets) dfs(t);
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < net.node_count(); ++v)
        if (on_path[v]) out.push_back(v);
    return out;
}

std::vector<std::vector<std::uint32_t>> all_walks(const SignalingNetwork& net,
                                                  const std::vector<std::uint32_t>& targets,
                                                  const std::vector<std::uint32_t>& oncogenes, unsigned d) {
    std::vector<bool> is_onc(net.node_count(), false);
    for (auto o : oncogenes) is_onc[o] = true;
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> walk;
    std::function<void(std::uint32_t)> extend = [&](std::uint32_t u) {
        walk.push_back(u);
        if (is_onc[u]) out.push_back(walk);
        if (walk.size() < d)
            for (const auto& arc : net.out_arcs(NodeId{u})) extend(arc.node.value);
        walk.pop_back();
    };
    for (auto t : targets) extend(t);
    return out;
}

std::vector<std::vector<std::uint32_t>> k_subsets(std::uint32_t n, unsigned k) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<std::uint32_t> s;
        for (std::uint32_t i = 0; i < n; ++i)
            if (pick[i]) s.push_back(i);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

std::size_t bucket_index(double v, double lo, double hi, unsigned n_bucket) {
    const double width = (hi - lo) / n_bucket;
    for (unsigned b = 0; b < n_bucket; ++b) {
        const double r_min = lo + width * b;
        const double r_max = b + 1 == n_bucket ? hi : lo + width * (b + 1);
        if ((v > r_min || (b == 0 && v == lo)) && v <= r_max) return b;
    }
    return n_bucket - 1;
}

std::vector<std::uint64_t> known_in_top_bruteforce(std::vector<Scored> all,
                                                   const std::vector<std::vector<std::uint32_t>>& known,
                                                   unsigned n_bucket, unsigned m_percent) {
    double lo = all.front().value, hi = lo;
    for (const auto& c : all) {
        lo = std::min(lo, c.value);
        hi = std::max(hi, c.value);
    }
    std::vector<std::vector<Scored>> buckets(n_bucket);
    for (auto& c : all) buckets[bucket_index(c.value, lo, hi, n_bucket)].push_back(c);
    std::vector<std::uint64_t> out(n_bucket, 0);
    for (unsigned b = 0; b < n_bucket; ++b) {
        auto& items = buckets[b];
        std::sort(items.begin(), items.end(), [](const Scored& x, const Scored& y) {
            return x.value != y.value ? x.value > y.value : x.members < y.members;
        });
        const std::uint64_t limit = (static_cast<std::uint64_t>(m_percent) * items.size() + 99) / 100;
        for (std::uint64_t r = 0; r < items.size() && r < limit; ++r)
            if (std::find(known.begin(), known.end(), items[r].members) != known.end()) ++out[b];
    }
    return out;
}

}  // namespace oracle
