#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iser/errors.hpp"

namespace iser {

/// Dense row-major matrix of doubles. One row per point.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), values(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

    std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
    std::span<double> row(std::size_t r) { return {values.data() + r * cols, cols}; }

    bool operator==(const Matrix&) const = default;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

/// A dataset of n points in d dimensions with optional binary labels
/// (1 = anomaly). Immutable by convention once constructed.
struct Dataset {
    Matrix points;
    std::optional<std::vector<int>> labels;
    std::vector<std::string> feature_names;

    std::size_t n() const { return points.rows; }
    std::size_t dim() const { return points.cols; }
    bool has_labels() const { return labels.has_value(); }
};

struct IserConfig {
    std::size_t psi = 16;    ///< points sampled per partitioning
    std::size_t t = 200;     ///< number of partitionings in the ensemble
    std::uint64_t seed = 1;
    bool normalize = false;  ///< per-feature min-max preprocessing
};

inline void validate_config(const IserConfig& config) {
    if (config.psi < 2) throw DataError("psi must be at least 2");
    if (config.t < 1) throw DataError("t must be at least 1");
}

/// Maps every feature column onto [0, 1] via (v - min) / (max - min).
/// Constant columns map to 0. Idempotent.
inline Dataset minmax_normalize(const Dataset& data) {
    Dataset out = data;
    const std::size_t n = data.n();
    const std::size_t d = data.dim();
    for (std::size_t c = 0; c < d; ++c) {
        double lo = data.points(0, c);
        double hi = lo;
        for (std::size_t r = 1; r < n; ++r) {
            lo = std::min(lo, data.points(r, c));
            hi = std::max(hi, data.points(r, c));
        }
        const double spread = hi - lo;
        for (std::size_t r = 0; r < n; ++r) {
            out.points(r, c) = spread > 0.0 ? (data.points(r, c) - lo) / spread : 0.0;
        }
    }
    return out;
}

}  // namespace iser
