#pragma once

// 2-D score-grid export for boundary inspection: a mesh of scores as CSV and
// an optional 8-bit grayscale portable graymap (binary P5).

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "iser/csv.hpp"
#include "iser/errors.hpp"
#include "iser/parallel.hpp"

namespace iser {

struct GridSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
    std::size_t resolution = 50;  ///< mesh points per axis, endpoints included
};

inline void validate_grid(const GridSpec& spec) {
    if (!(spec.x_min < spec.x_max) || !(spec.y_min < spec.y_max)) {
        throw DataError("grid ranges must satisfy min < max on both axes");
    }
    if (spec.resolution < 2) throw DataError("grid resolution must be at least 2");
}

struct GridResult {
    GridSpec spec;
    std::vector<double> scores;  ///< row-major, y outer ascending, x inner

    double x_at(std::size_t ix) const {
        return spec.x_min + (spec.x_max - spec.x_min) * static_cast<double>(ix) /
                                static_cast<double>(spec.resolution - 1);
    }
    double y_at(std::size_t iy) const {
        return spec.y_min + (spec.y_max - spec.y_min) * static_cast<double>(iy) /
                                static_cast<double>(spec.resolution - 1);
    }
};

/// Scores every mesh point with the given (x, y) -> score function,
/// parallelized over grid rows.
inline GridResult score_grid(const GridSpec& spec,
                             const std::function<double(double, double)>& scorer,
                             unsigned threads = 0) {
    validate_grid(spec);
    GridResult result{spec, std::vector<double>(spec.resolution * spec.resolution)};
    parallel_for(spec.resolution, threads, [&](std::size_t iy) {
        const double y = result.y_at(iy);
        for (std::size_t ix = 0; ix < spec.resolution; ++ix) {
            result.scores[iy * spec.resolution + ix] = scorer(result.x_at(ix), y);
        }
    });
    return result;
}

inline void write_grid_csv(const std::string& path, const GridResult& grid) {
    std::string out = "x,y,score\n";
    for (std::size_t iy = 0; iy < grid.spec.resolution; ++iy) {
        for (std::size_t ix = 0; ix < grid.spec.resolution; ++ix) {
            out += format_double(grid.x_at(ix));
            out += ',';
            out += format_double(grid.y_at(iy));
            out += ',';
            out += format_double(grid.scores[iy * grid.spec.resolution + ix]);
            out += '\n';
        }
    }
    write_text_file(path, out);
}

/// Binary P5 graymap, scores min-max scaled to [0, 255] per grid; a
/// constant grid renders mid-gray. The top image row is y_max.
inline void write_grid_pgm(const std::string& path, const GridResult& grid) {
    double lo = grid.scores[0];
    double hi = lo;
    for (const double s : grid.scores) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    const double spread = hi - lo;
    const std::size_t res = grid.spec.resolution;
    std::string out = "P5\n" + std::to_string(res) + " " + std::to_string(res) + "\n255\n";
    out.reserve(out.size() + res * res);
    for (std::size_t iy = res; iy-- > 0;) {
        for (std::size_t ix = 0; ix < res; ++ix) {
            const double s = grid.scores[iy * res + ix];
            const int value = spread > 0.0
                                  ? static_cast<int>(std::lround(255.0 * (s - lo) / spread))
                                  : 128;
            out += static_cast<char>(static_cast<unsigned char>(value));
        }
    }
    write_text_file(path, out);
}

}  // namespace iser
