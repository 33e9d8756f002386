#pragma once

// Hypersphere ensemble partitioning. A fitted model holds t independent
// partitionings; each samples psi dataset rows as centers and assigns every
// center the distance to its nearest co-sampled center as radius. Radii act
// as local density proxies: small in dense regions, large in sparse ones.

#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "iser/dataset.hpp"
#include "iser/errors.hpp"
#include "iser/parallel.hpp"
#include "iser/random.hpp"

namespace iser {

/// Radii are clamped below by this floor so 1 - 1/r stays finite when the
/// dataset contains duplicate rows. A tiny radius still reads as "very
/// dense": 1 - 1/r is hugely negative.
inline constexpr double radius_floor = 1e-12;

struct Partitioning {
    Matrix centers;             ///< psi x d, rows sampled from the dataset
    std::vector<double> radii;  ///< nearest co-center distance per center

    std::size_t size() const { return radii.size(); }
    bool operator==(const Partitioning&) const = default;
};

struct PartitionSet {
    std::vector<Partitioning> partitions;
    IserConfig config;
    std::size_t fitted_on_n = 0;
    std::size_t dim = 0;

    bool operator==(const PartitionSet&) const = default;
};

struct NearestCenter {
    std::size_t index;
    double distance;
};

struct Coverage {
    bool covered;   ///< distance to the nearest center <= that center's radius
    double radius;  ///< radius of the nearest center, covered or not
};

inline void check_dimension(std::size_t expected, std::size_t got) {
    if (expected != got) {
        throw DataError("dimension mismatch: model expects " + std::to_string(expected) +
                        " features, point has " + std::to_string(got));
    }
}

/// Exhaustive scan for the closest center; ties break to the lowest index.
inline NearestCenter nearest_center(const Partitioning& partition, std::span<const double> x) {
    check_dimension(partition.centers.cols, x.size());
    std::size_t best = 0;
    double best_sq = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < partition.centers.rows; ++j) {
        const double sq = squared_distance(partition.centers.row(j), x);
        if (sq < best_sq) {
            best_sq = sq;
            best = j;
        }
    }
    return {best, std::sqrt(best_sq)};
}

/// Membership test against the nearest hypersphere; the boundary counts as
/// inside.
inline Coverage radius_of_nearest(const Partitioning& partition, std::span<const double> x) {
    const NearestCenter nearest = nearest_center(partition, x);
    const double radius = partition.radii[nearest.index];
    return {nearest.distance <= radius, radius};
}

/// Builds one partitioning from the given dataset rows: copies the rows as
/// centers and assigns each the distance to its nearest co-sampled center.
inline Partitioning build_partitioning(const Matrix& points, std::span<const std::size_t> center_rows) {
    const std::size_t psi = center_rows.size();
    const std::size_t d = points.cols;
    Partitioning partition;
    partition.centers = Matrix(psi, d);
    partition.radii.assign(psi, 0.0);
    for (std::size_t j = 0; j < psi; ++j) {
        const auto src = points.row(center_rows[j]);
        std::copy(src.begin(), src.end(), partition.centers.row(j).begin());
    }
    for (std::size_t j = 0; j < psi; ++j) {
        double best_sq = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < psi; ++k) {
            if (k == j) continue;
            best_sq = std::min(best_sq, squared_distance(partition.centers.row(j), partition.centers.row(k)));
        }
        partition.radii[j] = std::max(std::sqrt(best_sq), radius_floor);
    }
    return partition;
}

/// Fits the ensemble: partitioning i samples psi rows without replacement
/// using derived stream i, so the result is independent of build order and
/// thread count.
inline PartitionSet fit_partition_set(const Dataset& data, const IserConfig& config,
                                      unsigned threads = 0) {
    validate_config(config);
    if (config.psi > data.n()) {
        throw DataError("psi (" + std::to_string(config.psi) + ") exceeds dataset size (" +
                        std::to_string(data.n()) + ")");
    }
    PartitionSet model;
    model.config = config;
    model.fitted_on_n = data.n();
    model.dim = data.dim();
    model.partitions.resize(config.t);
    parallel_for(config.t, threads, [&](std::size_t i) {
        RngStream stream(config.seed, i);
        const auto rows = stream.sample_without_replacement(data.n(), config.psi);
        model.partitions[i] = build_partitioning(data.points, rows);
    });
    return model;
}

// --- serialization -----------------------------------------------------
//
// Flat little-endian binary document, format tag "ISERPS01":
//   char[8]  magic "ISERPS01"
//   u64      psi, t, seed
//   u8       normalize
//   u64      fitted_on_n, dim
//   t blocks of: psi*dim f64 centers (row-major), psi f64 radii
//
// All fields are fixed width, so the document size depends only on
// (psi, t, dim), never on the size of the dataset the model was fitted on.

namespace detail {

inline constexpr char model_magic[8] = {'I', 'S', 'E', 'R', 'P', 'S', '0', '1'};

template <typename T>
void write_raw(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw DataError("model document truncated");
    return value;
}

}  // namespace detail

inline void save_partition_set(const PartitionSet& model, std::ostream& out) {
    out.write(detail::model_magic, sizeof(detail::model_magic));
    detail::write_raw(out, static_cast<std::uint64_t>(model.config.psi));
    detail::write_raw(out, static_cast<std::uint64_t>(model.config.t));
    detail::write_raw(out, static_cast<std::uint64_t>(model.config.seed));
    detail::write_raw(out, static_cast<std::uint8_t>(model.config.normalize ? 1 : 0));
    detail::write_raw(out, static_cast<std::uint64_t>(model.fitted_on_n));
    detail::write_raw(out, static_cast<std::uint64_t>(model.dim));
    for (const Partitioning& partition : model.partitions) {
        out.write(reinterpret_cast<const char*>(partition.centers.values.data()),
                  static_cast<std::streamsize>(partition.centers.values.size() * sizeof(double)));
        out.write(reinterpret_cast<const char*>(partition.radii.data()),
                  static_cast<std::streamsize>(partition.radii.size() * sizeof(double)));
    }
    if (!out) throw DataError("model write failed");
}

inline PartitionSet load_partition_set(std::istream& in) {
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || !std::equal(magic, magic + 8, detail::model_magic)) {
        throw DataError("not an ISERPS01 model document");
    }
    PartitionSet model;
    model.config.psi = detail::read_raw<std::uint64_t>(in);
    model.config.t = detail::read_raw<std::uint64_t>(in);
    model.config.seed = detail::read_raw<std::uint64_t>(in);
    model.config.normalize = detail::read_raw<std::uint8_t>(in) != 0;
    model.fitted_on_n = detail::read_raw<std::uint64_t>(in);
    model.dim = detail::read_raw<std::uint64_t>(in);
    model.partitions.resize(model.config.t);
    for (Partitioning& partition : model.partitions) {
        partition.centers = Matrix(model.config.psi, model.dim);
        partition.radii.assign(model.config.psi, 0.0);
        in.read(reinterpret_cast<char*>(partition.centers.values.data()),
                static_cast<std::streamsize>(partition.centers.values.size() * sizeof(double)));
        in.read(reinterpret_cast<char*>(partition.radii.data()),
                static_cast<std::streamsize>(partition.radii.size() * sizeof(double)));
        if (!in) throw DataError("model document truncated");
    }
    return model;
}

inline std::string serialize_partition_set(const PartitionSet& model) {
    std::ostringstream out(std::ios::binary);
    save_partition_set(model, out);
    return std::move(out).str();
}

inline void save_partition_set_file(const PartitionSet& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open file for writing: " + path);
    save_partition_set(model, out);
}

inline PartitionSet load_partition_set_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    return load_partition_set(in);
}

}  // namespace iser
