#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcprof/executor.hpp"
#include "tcprof/graph.hpp"
#include "tcprof/matrix.hpp"
#include "tcprof/pen.hpp"

namespace tcprof {

enum class MeasureTag { PenDiff, PprDiff, DistanceDiff };

std::string_view measure_name(MeasureTag tag);      // "pen" | "ppr" | "dist"
MeasureTag parse_measure(std::string_view name);    // throws ValidationError

/// Which side is subtracted. PEN and shortest-path distances use
/// RestMinusGenes; PPR is a similarity and defaults to GenesMinusRest.
enum class DiffOrientation { RestMinusGenes, GenesMinusRest };

DiffOrientation default_orientation(MeasureTag tag);

struct SourceDiffVector {
    MeasureTag measure = MeasureTag::PenDiff;
    std::vector<NodeId> gene_set;  // sorted, unique
    std::vector<double> values;    // one per network node
};

/// Mean of row `source` over `nodes`. The source's own diagonal entry is
/// included when it belongs to the set.
double average_row_value(const DenseMatrix& matrix, NodeId source, std::span<const NodeId> nodes);

double avg_pen_distance(const PenMatrix& pen, NodeId source, std::span<const NodeId> nodes);

/// mean(P[s, V - genes]) - mean(P[s, genes]).
double source_pen_diff(const PenMatrix& pen, NodeId source, std::span<const NodeId> genes);

/// Single-source diff of every node against `genes` over any all-pairs matrix.
SourceDiffVector source_diff_vector(const DenseMatrix& matrix, std::span<const NodeId> genes, MeasureTag measure,
                                    DiffOrientation orientation, const Executor& executor = Executor{});

SourceDiffVector source_pen_diff_vector(const PenMatrix& pen, std::span<const NodeId> genes,
                                        const Executor& executor = Executor{});

/// node,value rows.
std::string source_diff_csv(const SourceDiffVector& diffs, const SignalingNetwork& network, int decimals = 4);

struct ComboScore {
    std::vector<NodeId> members;  // strictly increasing
    double value = 0.0;

    friend bool operator==(const ComboScore&, const ComboScore&) = default;
};

/// Mean of the members' single-source diffs. Members may arrive in any order;
/// the returned tuple is canonical.
ComboScore combo_diff(const SourceDiffVector& diffs, std::span<const NodeId> members);

using ComboSink = std::function<void(std::span<const NodeId> members, double value)>;

/// C(n, k); throws ValidationError when it does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Streams every k-subset of the nodes in colexicographic order (grouped by
/// ascending largest member) together with its combination diff. Returns C(n, k).
std::uint64_t enumerate_combo_diffs(const SourceDiffVector& diffs, unsigned k, const ComboSink& sink);

/// The slice of the colex stream whose largest member lies in [first_max, last_max).
/// Concatenating consecutive slices reproduces enumerate_combo_diffs().
std::uint64_t enumerate_combo_diffs_slice(const SourceDiffVector& diffs, unsigned k, std::size_t first_max,
                                          std::size_t last_max, const ComboSink& sink);

/// A replayable stream of scored combinations.
class ComboStream {
public:
    virtual ~ComboStream() = default;
    virtual void for_each(const ComboSink& sink) const = 0;
};

class EnumeratedComboStream final : public ComboStream {
public:
    EnumeratedComboStream(const SourceDiffVector& diffs, unsigned k);
    void for_each(const ComboSink& sink) const override;

private:
    const SourceDiffVector& diffs_;
    unsigned k_;
};

class ListComboStream final : public ComboStream {
public:
    explicit ListComboStream(std::vector<ComboScore> combos) : combos_(std::move(combos)) {}
    void for_each(const ComboSink& sink) const override;

private:
    std::vector<ComboScore> combos_;
};

}  // namespace tcprof
