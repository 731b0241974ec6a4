#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tcprof/executor.hpp"
#include "tcprof/graph.hpp"
#include "tcprof/matrix.hpp"

namespace tcprof {

struct PprParams {
    double alpha = 0.2;
    double tolerance = 1e-9;
    std::size_t max_iterations = 100000;

    void validate() const;
};

/// pi(s, .) under the walk that stops with probability alpha at every node with
/// out-edges and always stops at a dead end.
struct PprVector {
    NodeId source;
    double alpha = 0.0;
    double residual_norm = 0.0;
    std::size_t iterations = 0;
    std::vector<double> values;
};

PprVector ppr_single_source(const SignalingNetwork& network, NodeId source, const PprParams& params = {});

struct PprMatrix {
    std::uint64_t network_digest = 0;
    PprParams params;
    DenseMatrix values;
    std::vector<double> residuals;  // per source row
};

PprMatrix ppr_all_pairs(const SignalingNetwork& network, const PprParams& params = {},
                        const Executor& executor = Executor{});

/// Streams rows without holding the full matrix. Rows are produced in batches
/// of executor.threads() and delivered to `sink` in ascending source order.
void for_each_ppr_row(const SignalingNetwork& network, const PprParams& params, const Executor& executor,
                      const std::function<void(NodeId, std::span<const double>)>& sink);

/// Binary cache: 8-byte magic, digest, alpha, tolerance, epsilon (NaN for PPR),
/// n, then n*n little-endian doubles.
struct MatrixCacheKey {
    std::uint64_t network_digest = 0;
    double alpha = 0.0;
    double tolerance = 0.0;
    std::optional<double> epsilon;

    std::string file_name(std::string_view prefix) const;
};

void save_matrix_cache(const std::filesystem::path& path, const MatrixCacheKey& key, const DenseMatrix& matrix);
/// Returns nullopt when the file is absent or its key does not match.
std::optional<DenseMatrix> load_matrix_cache(const std::filesystem::path& path, const MatrixCacheKey& key);

}  // namespace tcprof
