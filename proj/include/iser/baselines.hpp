#pragma once

// iNNE and IDK scorers over the same hypersphere partition sets. Both are
// published with "higher = more anomalous" orientation; IDK's raw feature-map
// similarity is a normality measure and is negated.

#include <cstdint>
#include <span>
#include <vector>

#include "iser/dataset.hpp"
#include "iser/errors.hpp"
#include "iser/parallel.hpp"
#include "iser/partitioning.hpp"
#include "iser/scoring.hpp"

namespace iser {

/// iNNE rescores coverage relative to the neighbourhood: the covering
/// hypersphere's radius divided by the radius of that center's nearest
/// neighbouring hypersphere.
struct InneModel {
    PartitionSet partition_set;
    /// neighbor_radii[i][j] = radius of center j's nearest other center in
    /// partitioning i.
    std::vector<std::vector<double>> neighbor_radii;
};

inline InneModel fit_inne(PartitionSet partition_set) {
    InneModel model;
    model.neighbor_radii.reserve(partition_set.partitions.size());
    for (const Partitioning& partition : partition_set.partitions) {
        const std::size_t psi = partition.size();
        std::vector<double> neighbor(psi, 0.0);
        for (std::size_t j = 0; j < psi; ++j) {
            std::size_t best = j;
            double best_sq = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < psi; ++k) {
                if (k == j) continue;
                const double sq = squared_distance(partition.centers.row(j), partition.centers.row(k));
                if (sq < best_sq) {
                    best_sq = sq;
                    best = k;
                }
            }
            neighbor[j] = partition.radii[best];
        }
        model.neighbor_radii.push_back(std::move(neighbor));
    }
    model.partition_set = std::move(partition_set);
    return model;
}

/// Mean over partitionings of: 1 - r[covering]/r[neighbour] when covered,
/// 1 when uncovered. Values are kept unclipped; ranks are what the metrics
/// consume and monotone maps leave them unchanged.
inline double inne_score(const InneModel& model, std::span<const double> x) {
    check_dimension(model.partition_set.dim, x.size());
    double sum = 0.0;
    const auto& partitions = model.partition_set.partitions;
    for (std::size_t i = 0; i < partitions.size(); ++i) {
        const NearestCenter nearest = nearest_center(partitions[i], x);
        const double radius = partitions[i].radii[nearest.index];
        if (nearest.distance <= radius) {
            sum += 1.0 - radius / model.neighbor_radii[i][nearest.index];
        } else {
            sum += 1.0;
        }
    }
    return sum / static_cast<double>(partitions.size());
}

inline ScoreVector inne_scores(const InneModel& model, const Dataset& data, unsigned threads = 0) {
    ScoreVector out{std::vector<double>(data.n()), Method::Inne};
    check_dimension(model.partition_set.dim, data.dim());
    parallel_for(data.n(), threads, [&](std::size_t r) {
        out.scores[r] = inne_score(model, data.points.row(r));
    });
    return out;
}

/// IDK represents points by binary hypersphere-membership vectors and scores
/// them against the kernel mean embedding, the training-set average feature
/// vector.
struct IdkModel {
    PartitionSet partition_set;
    std::vector<double> kme;  ///< length t*psi, blocks of per-center shares
};

inline IdkModel fit_idk(PartitionSet partition_set, const Matrix& train_points,
                        unsigned threads = 0) {
    check_dimension(partition_set.dim, train_points.cols);
    const std::size_t t = partition_set.partitions.size();
    const std::size_t psi = partition_set.config.psi;
    IdkModel model;
    model.kme.assign(t * psi, 0.0);
    // integer membership counts per partitioning; parallel over partitionings
    parallel_for(t, threads, [&](std::size_t i) {
        const Partitioning& partition = partition_set.partitions[i];
        std::vector<std::uint32_t> counts(psi, 0);
        for (std::size_t r = 0; r < train_points.rows; ++r) {
            const NearestCenter nearest = nearest_center(partition, train_points.row(r));
            if (nearest.distance <= partition.radii[nearest.index]) ++counts[nearest.index];
        }
        for (std::size_t j = 0; j < psi; ++j) {
            model.kme[i * psi + j] = static_cast<double>(counts[j]) / static_cast<double>(train_points.rows);
        }
    });
    model.partition_set = std::move(partition_set);
    return model;
}

/// Binary feature map: per partitioning, one-hot at the nearest center when
/// covered, an all-zero block when not.
inline std::vector<double> idk_feature_map(const IdkModel& model, std::span<const double> x) {
    check_dimension(model.partition_set.dim, x.size());
    const std::size_t psi = model.partition_set.config.psi;
    std::vector<double> feature(model.partition_set.partitions.size() * psi, 0.0);
    for (std::size_t i = 0; i < model.partition_set.partitions.size(); ++i) {
        const Partitioning& partition = model.partition_set.partitions[i];
        const NearestCenter nearest = nearest_center(partition, x);
        if (nearest.distance <= partition.radii[nearest.index]) {
            feature[i * psi + nearest.index] = 1.0;
        }
    }
    return feature;
}

/// Dot product of the feature map with the KME, computed sparsely (at most
/// one nonzero per block).
inline double idk_raw_similarity(const IdkModel& model, std::span<const double> x) {
    check_dimension(model.partition_set.dim, x.size());
    const std::size_t psi = model.partition_set.config.psi;
    double dot = 0.0;
    for (std::size_t i = 0; i < model.partition_set.partitions.size(); ++i) {
        const Partitioning& partition = model.partition_set.partitions[i];
        const NearestCenter nearest = nearest_center(partition, x);
        if (nearest.distance <= partition.radii[nearest.index]) {
            dot += model.kme[i * psi + nearest.index];
        }
    }
    return dot;
}

/// The raw similarity is a normality score; negate so higher = more anomalous.
inline double idk_score(const IdkModel& model, std::span<const double> x) {
    return -idk_raw_similarity(model, x);
}

inline ScoreVector idk_scores(const IdkModel& model, const Dataset& data, unsigned threads = 0) {
    ScoreVector out{std::vector<double>(data.n()), Method::Idk};
    check_dimension(model.partition_set.dim, data.dim());
    parallel_for(data.n(), threads, [&](std::size_t r) {
        out.scores[r] = idk_score(model, data.points.row(r));
    });
    return out;
}

}  // namespace iser
