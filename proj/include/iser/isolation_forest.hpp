#pragma once

// Isolation forest machinery, usable in two feature spaces: the raw input
// space (the classic detector, short paths = anomalous) and the ensemble
// representation space, where the assumption inverts -- anomalies map to
// near-constant vectors that cluster tightly, so LONG paths are anomalous
// and the score is flipped to 1 - 2^(-E(h)/c).

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "iser/dataset.hpp"
#include "iser/errors.hpp"
#include "iser/parallel.hpp"
#include "iser/partitioning.hpp"
#include "iser/random.hpp"
#include "iser/scoring.hpp"

namespace iser {

/// Expected path length of an unsuccessful BST search over n points -- the
/// standard normalization constant: 2 H(n-1) - 2(n-1)/n with the harmonic
/// number approximated by ln(i) + Euler-Mascheroni. Zero for n <= 1.
inline double expected_path_length(std::size_t n) {
    if (n <= 1) return 0.0;
    constexpr double euler_mascheroni = 0.5772156649;
    const double m = static_cast<double>(n - 1);
    return 2.0 * (std::log(m) + euler_mascheroni) - 2.0 * m / static_cast<double>(n);
}

struct IsolationTree {
    struct Node {
        std::int32_t left = -1;   ///< child indices; -1 on both marks a leaf
        std::int32_t right = -1;
        std::int32_t split_feature = -1;
        double split_value = 0.0;
        std::uint32_t size = 0;   ///< training points reaching this node
        std::uint32_t depth = 0;

        bool is_leaf() const { return left < 0; }
    };

    std::vector<Node> nodes;  ///< nodes[0] is the root

    /// Depth of the leaf x routes to, plus the expected-path adjustment for
    /// leaves still holding several points.
    double path_length(std::span<const double> x) const {
        std::size_t at = 0;
        while (!nodes[at].is_leaf()) {
            const Node& node = nodes[at];
            at = x[static_cast<std::size_t>(node.split_feature)] < node.split_value
                     ? static_cast<std::size_t>(node.left)
                     : static_cast<std::size_t>(node.right);
        }
        const Node& leaf = nodes[at];
        return static_cast<double>(leaf.depth) + expected_path_length(leaf.size);
    }
};

enum class FeatureSpace { Raw, Phi };

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t subsample = 0;  ///< 0 resolves to min(256, n)
};

inline std::size_t resolve_subsample(std::size_t requested, std::size_t n) {
    return requested == 0 ? std::min<std::size_t>(256, n) : requested;
}

struct IsolationForestModel {
    std::vector<IsolationTree> trees;
    std::size_t subsample = 0;
    FeatureSpace space = FeatureSpace::Raw;
    std::optional<PartitionSet> phi_model;  ///< present iff space == Phi
};

namespace detail {

/// Grows one tree over X restricted to `rows`; recursion stops at the height
/// limit, a single point, or when no sampled feature has spread (covers the
/// all-identical-points case).
class TreeBuilder {
public:
    TreeBuilder(const Matrix& points, RngStream& stream, std::uint32_t height_limit)
        : points_(points), stream_(stream), height_limit_(height_limit) {}

    IsolationTree build(std::vector<std::size_t> rows) {
        IsolationTree tree;
        // worst case: a full binary tree over the subsample
        tree.nodes.reserve(rows.size() * 2);
        grow(tree, rows.begin(), rows.end(), 0);
        return tree;
    }

private:
    using RowIter = std::vector<std::size_t>::iterator;

    std::size_t grow(IsolationTree& tree, RowIter first, RowIter last, std::uint32_t depth) {
        const auto count = static_cast<std::size_t>(last - first);
        const std::size_t node_index = tree.nodes.size();
        tree.nodes.emplace_back();
        tree.nodes[node_index].size = static_cast<std::uint32_t>(count);
        tree.nodes[node_index].depth = depth;
        if (depth >= height_limit_ || count <= 1) return node_index;

        // sample a split feature; a zero-spread draw is retried up to m times
        const std::size_t m = points_.cols;
        std::int32_t feature = -1;
        double lo = 0.0;
        double hi = 0.0;
        for (std::size_t attempt = 0; attempt < m; ++attempt) {
            const auto f = static_cast<std::size_t>(stream_.uniform_int(m));
            lo = hi = points_(*first, f);
            for (RowIter it = first + 1; it != last; ++it) {
                const double v = points_(*it, f);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (hi > lo) {
                feature = static_cast<std::int32_t>(f);
                break;
            }
        }
        if (feature < 0) return node_index;

        // uniform on the open interval, so both sides are non-empty
        const double split = stream_.uniform_open(lo, hi);
        const auto f = static_cast<std::size_t>(feature);
        const RowIter mid = std::partition(first, last,
                                           [&](std::size_t row) { return points_(row, f) < split; });

        tree.nodes[node_index].split_feature = feature;
        tree.nodes[node_index].split_value = split;
        const std::size_t left = grow(tree, first, mid, depth + 1);
        tree.nodes[node_index].left = static_cast<std::int32_t>(left);
        const std::size_t right = grow(tree, mid, last, depth + 1);
        tree.nodes[node_index].right = static_cast<std::int32_t>(right);
        return node_index;
    }

    const Matrix& points_;
    RngStream& stream_;
    std::uint32_t height_limit_;
};

}  // namespace detail

/// Builds a forest over the rows of X. Each tree draws its own
/// without-replacement subsample from a derived stream, so the forest is
/// identical for any thread count or tree build order.
inline IsolationForestModel build_forest(const Matrix& X, std::size_t n_trees,
                                         std::size_t subsample, std::uint64_t seed,
                                         unsigned threads = 0) {
    if (X.rows < 2) throw DataError("isolation forest needs at least 2 points");
    if (subsample < 2) throw DataError("subsample must be at least 2");
    if (subsample > X.rows) {
        throw DataError("subsample (" + std::to_string(subsample) + ") exceeds dataset size (" +
                        std::to_string(X.rows) + ")");
    }
    if (n_trees < 1) throw DataError("n_trees must be at least 1");

    const auto height_limit =
        static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(subsample))));
    IsolationForestModel model;
    model.subsample = subsample;
    model.trees.resize(n_trees);
    parallel_for(n_trees, threads, [&](std::size_t i) {
        RngStream stream(seed, i);
        auto rows = stream.sample_without_replacement(X.rows, subsample);
        model.trees[i] = detail::TreeBuilder(X, stream, height_limit).build(std::move(rows));
    });
    return model;
}

/// Average path length across the forest, summed in fixed tree order.
inline double mean_path_length(const IsolationForestModel& model, std::span<const double> x) {
    double sum = 0.0;
    for (const IsolationTree& tree : model.trees) sum += tree.path_length(x);
    return sum / static_cast<double>(model.trees.size());
}

/// Classic isolation forest score 2^(-E(h)/c); higher = more anomalous.
inline double score_iforest(const IsolationForestModel& model, std::span<const double> x) {
    if (model.space != FeatureSpace::Raw) {
        throw DataError("score_iforest requires a raw-space forest");
    }
    return std::exp2(-mean_path_length(model, x) / expected_path_length(model.subsample));
}

/// Inverted score over the ensemble representation space:
/// 1 - 2^(-E(h(Phi(x)))/c). Longer paths (tightly clustered anomaly
/// representations) now mean higher scores.
inline double score_iser_if(const IsolationForestModel& model, std::span<const double> x) {
    if (model.space != FeatureSpace::Phi || !model.phi_model) {
        throw DataError("score_iser_if requires a forest built on the ensemble representation space");
    }
    const std::vector<double> rep = transform(*model.phi_model, x);
    return 1.0 - std::exp2(-mean_path_length(model, rep) / expected_path_length(model.subsample));
}

/// Builds the representation-space forest on an already fitted partition set.
inline IsolationForestModel attach_phi_forest(PartitionSet partition_set, const Matrix& points,
                                              const ForestParams& params, std::uint64_t forest_seed,
                                              unsigned threads = 0) {
    const Matrix reps = transform_dataset(partition_set, points, threads);
    IsolationForestModel model = build_forest(reps, params.n_trees,
                                              resolve_subsample(params.subsample, points.rows),
                                              forest_seed, threads);
    model.space = FeatureSpace::Phi;
    model.phi_model = std::move(partition_set);
    return model;
}

inline constexpr std::uint64_t phi_forest_stream_tag = 0x1F02E57;

/// End-to-end fit: hypersphere ensemble, representation transform, forest.
inline IsolationForestModel fit_iser_forest(const Dataset& data, const IserConfig& config,
                                            const ForestParams& params = {}, unsigned threads = 0) {
    PartitionSet partition_set = fit_partition_set(data, config, threads);
    return attach_phi_forest(std::move(partition_set), data.points, params,
                             derive_seed(config.seed, {phi_forest_stream_tag}), threads);
}

/// Batch scoring for either space, parallelized over rows.
inline ScoreVector score_forest_dataset(const IsolationForestModel& model, const Dataset& data,
                                        unsigned threads = 0) {
    ScoreVector out{std::vector<double>(data.n()),
                    model.space == FeatureSpace::Raw ? Method::IForest : Method::IserIf};
    if (model.space == FeatureSpace::Phi) check_dimension(model.phi_model->dim, data.dim());
    parallel_for(data.n(), threads, [&](std::size_t r) {
        const auto x = data.points.row(r);
        out.scores[r] = model.space == FeatureSpace::Raw ? score_iforest(model, x)
                                                         : score_iser_if(model, x);
    });
    return out;
}

}  // namespace iser
