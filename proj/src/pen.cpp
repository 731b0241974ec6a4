#include "tcprof/pen.hpp"

#include <cmath>

#include "tcprof/error.hpp"
#include "tcprof/io.hpp"

namespace tcprof {

double pen_distance(double pi, std::size_t out_degree, double epsilon) {
    return 1.0 - std::log(pi * static_cast<double>(out_degree) + epsilon);
}

PenMatrix pen_matrix(const PprMatrix& ppr, const SignalingNetwork& network, double epsilon) {
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive", "epsilon");
    const auto n = network.node_count();
    if (ppr.values.size() != n)
        throw ValidationError("PPR matrix has " + std::to_string(ppr.values.size()) + " rows, network has " +
                              std::to_string(n) + " nodes");

    PenMatrix pen{network.digest(), ppr.params.alpha, epsilon, DenseMatrix(n)};
    for (std::size_t s = 0; s < n; ++s) {
        const auto degree = network.out_degree(NodeId{static_cast<std::uint32_t>(s)});
        const auto pi = ppr.values.row(s);
        auto out = pen.values.row(s);
        for (std::size_t t = 0; t < n; ++t) out[t] = s == t ? 0.0 : pen_distance(pi[t], degree, epsilon);
    }
    return pen;
}

std::string pen_matrix_csv(const PenMatrix& pen, const SignalingNetwork& network, int decimals) {
    std::string out = "source,target,distance\n";
    const auto n = pen.values.size();
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            out += network.symbols()[s];
            out += ',';
            out += network.symbols()[t];
            out += ',';
            out += format_fixed(pen.values(s, t), decimals);
            out += '\n';
        }
    return out;
}

}  // namespace tcprof
