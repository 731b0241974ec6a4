#pragma once

#include <cstdint>
#include <string>

#include "tcprof/graph.hpp"
#include "tcprof/matrix.hpp"
#include "tcprof/ppr.hpp"

namespace tcprof {

inline constexpr double kDefaultEpsilon = 1e-5;

/// 1 - ln(pi * out_degree + epsilon). Off-diagonal entries only; the diagonal
/// is fixed at zero by pen_matrix().
double pen_distance(double pi, std::size_t out_degree, double epsilon = kDefaultEpsilon);

/// Largest value pen_distance() can take, reached exactly when pi == 0.
inline double pen_distance_cap(double epsilon = kDefaultEpsilon) { return pen_distance(0.0, 0, epsilon); }

struct PenMatrix {
    std::uint64_t network_digest = 0;
    double alpha = 0.0;
    double epsilon = kDefaultEpsilon;
    DenseMatrix values;  // row = source, asymmetric
};

PenMatrix pen_matrix(const PprMatrix& ppr, const SignalingNetwork& network, double epsilon = kDefaultEpsilon);

/// source,target,distance rows with the given number of decimals.
std::string pen_matrix_csv(const PenMatrix& pen, const SignalingNetwork& network, int decimals = 4);

}  // namespace tcprof
