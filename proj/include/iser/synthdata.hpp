#pragma once

// Seeded 2-D synthetic scenarios: a global-anomaly cluster, local anomalies
// hugging a spiral, dependency anomalies with swapped correlation, and the
// two demo datasets (clusters / spiral with box-uniform anomalies). All
// generation constants are artifact defaults, overridable via SynthSpec.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "iser/dataset.hpp"
#include "iser/errors.hpp"
#include "iser/random.hpp"

namespace iser {

enum class SynthKind { Global, LocalSpiral, Dependency, TwoCluster, SpiralDemo };

inline const char* synth_kind_name(SynthKind kind) {
    switch (kind) {
        case SynthKind::Global: return "global";
        case SynthKind::LocalSpiral: return "local-spiral";
        case SynthKind::Dependency: return "dependency";
        case SynthKind::TwoCluster: return "two-cluster";
        case SynthKind::SpiralDemo: return "spiral-demo";
    }
    return "?";
}

inline SynthKind parse_synth_kind(const std::string& name) {
    for (const SynthKind kind : {SynthKind::Global, SynthKind::LocalSpiral, SynthKind::Dependency,
                                 SynthKind::TwoCluster, SynthKind::SpiralDemo}) {
        if (name == synth_kind_name(kind)) return kind;
    }
    throw UsageError("unknown synthetic kind '" + name +
                     "' (expected one of global, local-spiral, dependency, two-cluster, spiral-demo)");
}

struct SynthSpec {
    SynthKind kind = SynthKind::Global;
    std::size_t n_normal = 500;
    std::size_t n_anomaly = 25;
    std::uint64_t seed = 1;
    double noise = 0.1;
};

namespace detail {

// Archimedean spiral r = 0.5 + 0.4*theta, theta in [0, 6*pi]
inline constexpr double spiral_r0 = 0.5;
inline constexpr double spiral_growth = 0.4;
inline constexpr double spiral_theta_max = 6.0 * std::numbers::pi;

inline void spiral_point(double theta, double& x, double& y) {
    const double r = spiral_r0 + spiral_growth * theta;
    x = r * std::cos(theta);
    y = r * std::sin(theta);
}

// unit tangent of the spiral at theta
inline void spiral_tangent(double theta, double& tx, double& ty) {
    const double r = spiral_r0 + spiral_growth * theta;
    tx = spiral_growth * std::cos(theta) - r * std::sin(theta);
    ty = spiral_growth * std::sin(theta) + r * std::cos(theta);
    const double norm = std::sqrt(tx * tx + ty * ty);
    tx /= norm;
    ty /= norm;
}

struct BoundingBox {
    double x_min, x_max, y_min, y_max;
};

inline BoundingBox bounding_box(const Matrix& points, std::size_t n_rows) {
    BoundingBox box{points(0, 0), points(0, 0), points(0, 1), points(0, 1)};
    for (std::size_t r = 1; r < n_rows; ++r) {
        box.x_min = std::min(box.x_min, points(r, 0));
        box.x_max = std::max(box.x_max, points(r, 0));
        box.y_min = std::min(box.y_min, points(r, 1));
        box.y_max = std::max(box.y_max, points(r, 1));
    }
    return box;
}

}  // namespace detail

/// Generates n_normal + n_anomaly labelled 2-D points. Normals come first.
/// Normal and anomaly draws use separate derived streams (0 and 1), so the
/// normal cloud is unchanged when only n_anomaly varies.
inline Dataset generate(const SynthSpec& spec) {
    if (spec.n_normal < 1) throw DataError("n_normal must be at least 1");
    if (spec.noise <= 0.0) throw DataError("noise must be positive");

    const std::size_t n = spec.n_normal + spec.n_anomaly;
    Dataset data;
    data.points = Matrix(n, 2);
    data.labels.emplace(n, 0);
    data.feature_names = {"f0", "f1"};
    for (std::size_t i = spec.n_normal; i < n; ++i) (*data.labels)[i] = 1;

    RngStream normal_stream(spec.seed, 0);
    RngStream anomaly_stream(spec.seed, 1);

    switch (spec.kind) {
        case SynthKind::Global: {
            // dense isotropic cluster; anomalies on a surrounding annulus
            for (std::size_t i = 0; i < spec.n_normal; ++i) {
                data.points(i, 0) = normal_stream.normal();
                data.points(i, 1) = normal_stream.normal();
            }
            for (std::size_t i = spec.n_normal; i < n; ++i) {
                const double radius = anomaly_stream.uniform(4.0, 8.0);
                const double angle = anomaly_stream.uniform(0.0, 2.0 * std::numbers::pi);
                data.points(i, 0) = radius * std::cos(angle);
                data.points(i, 1) = radius * std::sin(angle);
            }
            break;
        }
        case SynthKind::LocalSpiral:
        case SynthKind::SpiralDemo: {
            for (std::size_t i = 0; i < spec.n_normal; ++i) {
                const double theta = normal_stream.uniform(0.0, detail::spiral_theta_max);
                double x, y;
                detail::spiral_point(theta, x, y);
                data.points(i, 0) = x + normal_stream.normal(0.0, spec.noise);
                data.points(i, 1) = y + normal_stream.normal(0.0, spec.noise);
            }
            if (spec.kind == SynthKind::LocalSpiral) {
                // near the structure but off it: perpendicular offsets of
                // 3-6x the arm noise, random side
                for (std::size_t i = spec.n_normal; i < n; ++i) {
                    const double theta = anomaly_stream.uniform(0.0, detail::spiral_theta_max);
                    double x, y, tx, ty;
                    detail::spiral_point(theta, x, y);
                    detail::spiral_tangent(theta, tx, ty);
                    const double side = anomaly_stream.uniform_int(2) == 0 ? -1.0 : 1.0;
                    const double offset = side * anomaly_stream.uniform(3.0, 6.0) * spec.noise;
                    data.points(i, 0) = x - offset * ty;
                    data.points(i, 1) = y + offset * tx;
                }
            } else if (spec.n_anomaly > 0) {
                const auto box = detail::bounding_box(data.points, spec.n_normal);
                for (std::size_t i = spec.n_normal; i < n; ++i) {
                    data.points(i, 0) = anomaly_stream.uniform(box.x_min, box.x_max);
                    data.points(i, 1) = anomaly_stream.uniform(box.y_min, box.y_max);
                }
            }
            break;
        }
        case SynthKind::Dependency: {
            // normals along (1,1)/sqrt(2), anomalies along (1,-1)/sqrt(2);
            // identical per-feature marginals, deviant correlation
            const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
            for (std::size_t i = 0; i < n; ++i) {
                const bool anomalous = i >= spec.n_normal;
                RngStream& stream = anomalous ? anomaly_stream : normal_stream;
                const double along = stream.normal(0.0, 3.0);
                const double across = stream.normal(0.0, spec.noise);
                const double u = anomalous ? across : along;
                const double v = anomalous ? along : across;
                data.points(i, 0) = (u + v) * inv_sqrt2;
                data.points(i, 1) = (u - v) * inv_sqrt2;
            }
            break;
        }
        case SynthKind::TwoCluster: {
            for (std::size_t i = 0; i < spec.n_normal; ++i) {
                const double cx = i % 2 == 0 ? -3.0 : 3.0;
                data.points(i, 0) = normal_stream.normal(cx, 0.5);
                data.points(i, 1) = normal_stream.normal(0.0, 0.5);
            }
            if (spec.n_anomaly > 0) {
                const auto box = detail::bounding_box(data.points, spec.n_normal);
                for (std::size_t i = spec.n_normal; i < n; ++i) {
                    data.points(i, 0) = anomaly_stream.uniform(box.x_min, box.x_max);
                    data.points(i, 1) = anomaly_stream.uniform(box.y_min, box.y_max);
                }
            }
            break;
        }
    }
    return data;
}

}  // namespace iser
