#include "tcprof/influence.hpp"

#include <algorithm>
#include <limits>

#include "tcprof/error.hpp"
#include "tcprof/io.hpp"

namespace tcprof {

namespace {

std::vector<NodeId> canonical_genes(std::span<const NodeId> genes, std::size_t n) {
    std::vector<NodeId> sorted(genes.begin(), genes.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty()) throw ValidationError("gene set is empty", "genes");
    if (sorted.back().index() >= n) throw ValidationError("gene outside the network", "genes");
    if (sorted.size() == n) throw ValidationError("gene set covers every node; its complement is empty", "genes");
    return sorted;
}

/// Row means over the gene set and its complement, both summed in ascending id order.
std::pair<double, double> split_means(std::span<const double> row, const std::vector<char>& is_gene,
                                      std::size_t gene_count) {
    double genes = 0.0, rest = 0.0;
    for (std::size_t t = 0; t < row.size(); ++t) (is_gene[t] ? genes : rest) += row[t];
    return {genes / static_cast<double>(gene_count), rest / static_cast<double>(row.size() - gene_count)};
}

}  // namespace

std::string_view measure_name(MeasureTag tag) {
    switch (tag) {
        case MeasureTag::PenDiff: return "pen";
        case MeasureTag::PprDiff: return "ppr";
        case MeasureTag::DistanceDiff: return "dist";
    }
    return "?";
}

MeasureTag parse_measure(std::string_view name) {
    if (name == "pen") return MeasureTag::PenDiff;
    if (name == "ppr") return MeasureTag::PprDiff;
    if (name == "dist") return MeasureTag::DistanceDiff;
    throw ValidationError("unknown measure '" + std::string(name) + "' (expected pen, ppr or dist)", "measure");
}

DiffOrientation default_orientation(MeasureTag tag) {
    return tag == MeasureTag::PprDiff ? DiffOrientation::GenesMinusRest : DiffOrientation::RestMinusGenes;
}

double average_row_value(const DenseMatrix& matrix, NodeId source, std::span<const NodeId> nodes) {
    if (nodes.empty()) throw ValidationError("cannot average over an empty node set");
    const auto row = matrix.row(source.index());
    double sum = 0.0;
    for (const auto t : nodes) sum += row[t.index()];
    return sum / static_cast<double>(nodes.size());
}

double avg_pen_distance(const PenMatrix& pen, NodeId source, std::span<const NodeId> nodes) {
    return average_row_value(pen.values, source, nodes);
}

double source_pen_diff(const PenMatrix& pen, NodeId source, std::span<const NodeId> genes) {
    const auto n = pen.values.size();
    const auto sorted = canonical_genes(genes, n);
    std::vector<char> is_gene(n, 0);
    for (const auto g : sorted) is_gene[g.index()] = 1;
    const auto [gene_mean, rest_mean] = split_means(pen.values.row(source.index()), is_gene, sorted.size());
    return rest_mean - gene_mean;
}

SourceDiffVector source_diff_vector(const DenseMatrix& matrix, std::span<const NodeId> genes, MeasureTag measure,
                                    DiffOrientation orientation, const Executor& executor) {
    const auto n = matrix.size();
    SourceDiffVector out{measure, canonical_genes(genes, n), std::vector<double>(n)};
    std::vector<char> is_gene(n, 0);
    for (const auto g : out.gene_set) is_gene[g.index()] = 1;
    executor.for_each_index(n, [&](std::size_t s) {
        const auto [gene_mean, rest_mean] = split_means(matrix.row(s), is_gene, out.gene_set.size());
        out.values[s] = orientation == DiffOrientation::RestMinusGenes ? rest_mean - gene_mean : gene_mean - rest_mean;
    });
    return out;
}

SourceDiffVector source_pen_diff_vector(const PenMatrix& pen, std::span<const NodeId> genes,
                                        const Executor& executor) {
    return source_diff_vector(pen.values, genes, MeasureTag::PenDiff, DiffOrientation::RestMinusGenes, executor);
}

std::string source_diff_csv(const SourceDiffVector& diffs, const SignalingNetwork& network, int decimals) {
    std::string out = "node,";
    out += measure_name(diffs.measure);
    out += "_diff\n";
    for (std::size_t s = 0; s < diffs.values.size(); ++s) {
        out += network.symbols().at(s);
        out += ',';
        out += format_fixed(diffs.values[s], decimals);
        out += '\n';
    }
    return out;
}

ComboScore combo_diff(const SourceDiffVector& diffs, std::span<const NodeId> members) {
    if (members.size() < 2) throw ValidationError("a combination needs at least two members", "k");
    ComboScore score{std::vector<NodeId>(members.begin(), members.end()), 0.0};
    std::sort(score.members.begin(), score.members.end());
    if (std::adjacent_find(score.members.begin(), score.members.end()) != score.members.end())
        throw ValidationError("combination members must be distinct");
    if (score.members.back().index() >= diffs.values.size())
        throw ValidationError("combination member outside the network");
    double sum = 0.0;
    for (const auto m : score.members) sum += diffs.values[m.index()];
    score.value = sum / static_cast<double>(score.members.size());
    return score;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > std::numeric_limits<std::uint64_t>::max())
            throw ValidationError("C(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows 64 bits", "k");
    }
    return static_cast<std::uint64_t>(result);
}

std::uint64_t enumerate_combo_diffs_slice(const SourceDiffVector& diffs, unsigned k, std::size_t first_max,
                                          std::size_t last_max, const ComboSink& sink) {
    const auto n = diffs.values.size();
    if (k < 2 || k > n)
        throw ValidationError("k must satisfy 2 <= k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")",
                              "k");
    last_max = std::min(last_max, n);
    first_max = std::max<std::size_t>(first_max, k - 1);

    const auto& values = diffs.values;
    std::vector<NodeId> combo(k);
    std::uint64_t count = 0;

    for (std::size_t top = first_max; top < last_max; ++top) {
        // (k-1)-subsets of [0, top) in colex order, then `top` appended.
        const std::size_t lead = k - 1;
        for (std::size_t i = 0; i < lead; ++i) combo[i] = NodeId{static_cast<std::uint32_t>(i)};
        combo[lead] = NodeId{static_cast<std::uint32_t>(top)};
        for (;;) {
            double sum = 0.0;
            for (const auto m : combo) sum += values[m.index()];
            sink(combo, sum / static_cast<double>(k));
            ++count;

            std::size_t i = 0;
            while (i < lead) {
                const std::size_t limit = i + 1 < lead ? combo[i + 1].index() : top;
                if (combo[i].index() + 1 < limit) break;
                ++i;
            }
            if (i == lead) break;
            combo[i].value += 1;
            for (std::size_t j = 0; j < i; ++j) combo[j] = NodeId{static_cast<std::uint32_t>(j)};
        }
    }
    return count;
}

std::uint64_t enumerate_combo_diffs(const SourceDiffVector& diffs, unsigned k, const ComboSink& sink) {
    return enumerate_combo_diffs_slice(diffs, k, 0, diffs.values.size(), sink);
}

EnumeratedComboStream::EnumeratedComboStream(const SourceDiffVector& diffs, unsigned k) : diffs_(diffs), k_(k) {
    if (k < 2 || k > diffs.values.size()) throw ValidationError("k must satisfy 2 <= k <= n", "k");
}

void EnumeratedComboStream::for_each(const ComboSink& sink) const { enumerate_combo_diffs(diffs_, k_, sink); }

void ListComboStream::for_each(const ComboSink& sink) const {
    for (const auto& c : combos_) sink(c.members, c.value);
}

}  // namespace tcprof
