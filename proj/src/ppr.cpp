#include "tcprof/ppr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "tcprof/error.hpp"

namespace tcprof {

namespace {

struct RowResult {
    double residual = 0.0;
    std::size_t iterations = 0;
};

/// Synchronous push rounds: every node holding residual mass r keeps alpha*r
/// (all of it at a dead end) and spreads the rest evenly over its out-arcs.
/// Stops once the undistributed mass falls below the tolerance, drops it and
/// renormalizes. Nodes are visited in id order so results are bitwise stable.
class PushSolver {
public:
    PushSolver(const SignalingNetwork& network, const PprParams& params)
        : network_(network), params_(params), residual_(network.node_count()), next_(network.node_count()) {}

    RowResult solve(NodeId source, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        std::fill(residual_.begin(), residual_.end(), 0.0);
        residual_[source.index()] = 1.0;
        active_.assign(1, source.index());
        double mass = 1.0;
        std::size_t rounds = 0;
        const double alpha = params_.alpha;

        while (mass > params_.tolerance) {
            if (rounds == params_.max_iterations)
                throw ComputeError("PPR from '" + network_.symbol(source) + "' did not converge within " +
                                       std::to_string(params_.max_iterations) + " iterations",
                                   mass);
            ++rounds;
            const std::size_t n = residual_.size();
            const bool dense = active_.size() * 16 > n;
            next_active_.clear();
            auto push = [&](std::size_t u, bool track) {
                const double r = residual_[u];
                residual_[u] = 0.0;
                const auto arcs = network_.out_arcs(NodeId{static_cast<std::uint32_t>(u)});
                if (arcs.empty()) {
                    out[u] += r;
                    return;
                }
                out[u] += alpha * r;
                const double share = (1.0 - alpha) * r / static_cast<double>(arcs.size());
                for (const auto& arc : arcs) {
                    const auto v = arc.node.index();
                    if (track && next_[v] == 0.0) next_active_.push_back(v);
                    next_[v] += share;
                }
            };
            if (dense) {
                // Same ascending order as the sorted active list, without the bookkeeping.
                for (std::size_t u = 0; u < n; ++u)
                    if (residual_[u] != 0.0) push(u, false);
            } else {
                for (const auto u : active_) push(u, true);
            }
            if (dense || next_active_.size() * 16 > n) {
                next_active_.clear();
                for (std::size_t v = 0; v < n; ++v)
                    if (next_[v] != 0.0) next_active_.push_back(v);
            } else {
                std::sort(next_active_.begin(), next_active_.end());
            }
            mass = 0.0;
            for (const auto v : next_active_) {
                residual_[v] = next_[v];
                next_[v] = 0.0;
                mass += residual_[v];
            }
            active_.swap(next_active_);
        }

        for (const auto v : active_) residual_[v] = 0.0;
        const double total = std::accumulate(out.begin(), out.end(), 0.0);
        for (auto& x : out) x /= total;
        return {mass, rounds};
    }

private:
    const SignalingNetwork& network_;
    const PprParams& params_;
    std::vector<double> residual_, next_;
    std::vector<std::size_t> active_, next_active_;
};

void check_source(const SignalingNetwork& network, NodeId source) {
    if (source.index() >= network.node_count()) throw ValidationError("source node outside the network", "source");
}

constexpr char kMagic[8] = {'T', 'C', 'P', 'M', 'A', 'T', '0', '1'};

}  // namespace

void PprParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)", "alpha");
    if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive", "tolerance");
    if (max_iterations == 0) throw ValidationError("iteration cap must be positive", "max_iterations");
}

PprVector ppr_single_source(const SignalingNetwork& network, NodeId source, const PprParams& params) {
    params.validate();
    check_source(network, source);
    PprVector result;
    result.source = source;
    result.alpha = params.alpha;
    result.values.resize(network.node_count());
    PushSolver solver(network, params);
    const auto row = solver.solve(source, result.values);
    result.residual_norm = row.residual;
    result.iterations = row.iterations;
    return result;
}

PprMatrix ppr_all_pairs(const SignalingNetwork& network, const PprParams& params, const Executor& executor) {
    params.validate();
    const auto n = network.node_count();
    PprMatrix result;
    result.network_digest = network.digest();
    result.params = params;
    result.values = DenseMatrix(n);
    result.residuals.assign(n, 0.0);

    const std::size_t chunks = std::min<std::size_t>(n, std::size_t{executor.threads()} * 4);
    executor.for_each_index(chunks, [&](std::size_t chunk) {
        PushSolver solver(network, params);
        for (std::size_t s = chunk; s < n; s += chunks)
            result.residuals[s] = solver.solve(NodeId{static_cast<std::uint32_t>(s)}, result.values.row(s)).residual;
    });
    return result;
}

void for_each_ppr_row(const SignalingNetwork& network, const PprParams& params, const Executor& executor,
                      const std::function<void(NodeId, std::span<const double>)>& sink) {
    params.validate();
    const auto n = network.node_count();
    const std::size_t width = executor.threads();
    std::vector<std::vector<double>> rows(width, std::vector<double>(n));
    for (std::size_t base = 0; base < n; base += width) {
        const auto batch = std::min(width, n - base);
        executor.for_each_index(batch, [&](std::size_t i) {
            PushSolver solver(network, params);
            solver.solve(NodeId{static_cast<std::uint32_t>(base + i)}, rows[i]);
        });
        for (std::size_t i = 0; i < batch; ++i) sink(NodeId{static_cast<std::uint32_t>(base + i)}, rows[i]);
    }
}

std::string MatrixCacheKey::file_name(std::string_view prefix) const {
    std::string name(prefix);
    name += '-' + hex_digest(network_digest);
    std::uint64_t bits = 0;
    auto mix = [&](double x) {
        std::memcpy(&bits, &x, sizeof bits);
        return hex_digest(bits);
    };
    name += "-a" + mix(alpha) + "-t" + mix(tolerance);
    if (epsilon) name += "-e" + mix(*epsilon);
    return name + ".bin";
}

void save_matrix_cache(const std::filesystem::path& path, const MatrixCacheKey& key, const DenseMatrix& matrix) {
    static_assert(std::endian::native == std::endian::little, "cache format is little-endian");
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write cache " + tmp);
        const double eps = key.epsilon.value_or(std::nan(""));
        const std::uint64_t n = matrix.size();
        out.write(kMagic, sizeof kMagic);
        out.write(reinterpret_cast<const char*>(&key.network_digest), sizeof key.network_digest);
        out.write(reinterpret_cast<const char*>(&key.alpha), sizeof key.alpha);
        out.write(reinterpret_cast<const char*>(&key.tolerance), sizeof key.tolerance);
        out.write(reinterpret_cast<const char*>(&eps), sizeof eps);
        out.write(reinterpret_cast<const char*>(&n), sizeof n);
        out.write(reinterpret_cast<const char*>(matrix.values().data()),
                  static_cast<std::streamsize>(matrix.values().size() * sizeof(double)));
        if (!out) throw IoError("cache write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::optional<DenseMatrix> load_matrix_cache(const std::filesystem::path& path, const MatrixCacheKey& key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    std::uint64_t digest = 0, n = 0;
    double alpha = 0, tolerance = 0, eps = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&digest), sizeof digest);
    in.read(reinterpret_cast<char*>(&alpha), sizeof alpha);
    in.read(reinterpret_cast<char*>(&tolerance), sizeof tolerance);
    in.read(reinterpret_cast<char*>(&eps), sizeof eps);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) return std::nullopt;
    const bool eps_matches = key.epsilon ? eps == *key.epsilon : std::isnan(eps);
    if (digest != key.network_digest || alpha != key.alpha || tolerance != key.tolerance || !eps_matches)
        return std::nullopt;
    std::vector<double> values(n * n);
    in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!in) return std::nullopt;
    return DenseMatrix(n, std::move(values));
}

}  // namespace tcprof
