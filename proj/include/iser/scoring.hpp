#pragma once

// Ensemble representations and the two direct ISER scores. phi encodes
// density through the covering hypersphere's radius (1 - 1/r), or exactly 1
// for uncovered points; the average score reads isolation magnitude, the
// similarity score reads pattern consistency against the all-ones reference.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "iser/dataset.hpp"
#include "iser/errors.hpp"
#include "iser/parallel.hpp"
#include "iser/partitioning.hpp"

namespace iser {

enum class Method { IserA, IserS, IserIf, Inne, Idk, IForest };

inline constexpr Method all_methods[] = {Method::IserA, Method::IserS, Method::IserIf,
                                         Method::Inne,  Method::Idk,   Method::IForest};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::IserA: return "iser-a";
        case Method::IserS: return "iser-s";
        case Method::IserIf: return "iser-if";
        case Method::Inne: return "inne";
        case Method::Idk: return "idk";
        case Method::IForest: return "iforest";
    }
    return "?";
}

inline Method parse_method(const std::string& name) {
    for (const Method m : all_methods) {
        if (name == method_name(m)) return m;
    }
    throw UsageError("unknown method '" + name +
                     "' (expected one of iser-a, iser-s, iser-if, inne, idk, iforest)");
}

/// Per-point scores; higher means more anomalous for every method.
struct ScoreVector {
    std::vector<double> scores;
    Method method;
};

/// Representation value of x in one partitioning: 1 - 1/r of the covering
/// hypersphere, or exactly 1 when x falls outside its nearest hypersphere.
/// Always <= 1; negative when the covering radius is below 1.
inline double phi(const Partitioning& partition, std::span<const double> x) {
    const Coverage coverage = radius_of_nearest(partition, x);
    return coverage.covered ? 1.0 - 1.0 / coverage.radius : 1.0;
}

/// Ensemble representation: phi across all t partitionings, in order.
inline std::vector<double> transform(const PartitionSet& model, std::span<const double> x) {
    check_dimension(model.dim, x.size());
    std::vector<double> values(model.partitions.size());
    for (std::size_t i = 0; i < model.partitions.size(); ++i) {
        values[i] = phi(model.partitions[i], x);
    }
    return values;
}

/// n x t matrix of ensemble representations, parallelized over rows.
inline Matrix transform_dataset(const PartitionSet& model, const Matrix& points,
                                unsigned threads = 0) {
    check_dimension(model.dim, points.cols);
    Matrix reps(points.rows, model.partitions.size());
    parallel_for(points.rows, threads, [&](std::size_t r) {
        const auto row = points.row(r);
        for (std::size_t i = 0; i < model.partitions.size(); ++i) {
            reps(r, i) = phi(model.partitions[i], row);
        }
    });
    return reps;
}

/// Arithmetic mean of the ensemble components. Bounded above by 1, which is
/// attained exactly when the point is uncovered in every partitioning.
inline double score_avg(std::span<const double> rep) {
    double sum = 0.0;
    for (const double v : rep) sum += v;
    return sum / static_cast<double>(rep.size());
}

/// Cosine similarity between the ensemble representation and the all-ones
/// reference pattern. In [-1, 1]; a zero representation maps to 0 (the only
/// input where cosine is undefined).
inline double score_sim(std::span<const double> rep) {
    double sum = 0.0;
    double sq = 0.0;
    for (const double v : rep) {
        sum += v;
        sq += v * v;
    }
    if (sq == 0.0) return 0.0;
    return sum / (std::sqrt(sq) * std::sqrt(static_cast<double>(rep.size())));
}

/// Batch scoring for the direct ISER methods. Row order is preserved and the
/// per-row reduction runs in fixed partition order, so batch output matches a
/// per-point transform + score loop bit for bit.
inline ScoreVector score_dataset(const PartitionSet& model, const Dataset& data, Method method,
                                 unsigned threads = 0) {
    if (method != Method::IserA && method != Method::IserS) {
        throw DataError(std::string("score_dataset handles iser-a and iser-s only, got ") +
                        method_name(method));
    }
    check_dimension(model.dim, data.dim());
    ScoreVector out{std::vector<double>(data.n()), method};
    const auto t = static_cast<double>(model.partitions.size());
    parallel_for(data.n(), threads, [&](std::size_t r) {
        const auto x = data.points.row(r);
        double sum = 0.0;
        double sq = 0.0;
        for (const Partitioning& partition : model.partitions) {
            const double v = phi(partition, x);
            sum += v;
            sq += v * v;
        }
        if (method == Method::IserA) {
            out.scores[r] = sum / t;
        } else {
            out.scores[r] = sq == 0.0 ? 0.0 : sum / (std::sqrt(sq) * std::sqrt(t));
        }
    });
    return out;
}

}  // namespace iser
