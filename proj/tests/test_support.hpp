#pragma once

// Shared helpers and independent oracles for the test suite. Oracles are
// deliberately written as plain brute-force scans so they share no code with
// the implementation paths they check.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "iser/dataset.hpp"

namespace test_support {

inline std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "iser_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string write_temp_file(const std::string& name, const std::string& content) {
    const auto path = temp_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    return path.string();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Exhaustive nearest-row scan; linear, index ties resolved to the lowest.
inline std::size_t brute_force_nearest(const iser::Matrix& rows, std::span<const double> x) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows.rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < rows.cols; ++c) {
            acc += (rows(r, c) - x[c]) * (rows(r, c) - x[c]);
        }
        const double dist = std::sqrt(acc);
        if (dist < best_dist) {
            best_dist = dist;
            best = r;
        }
    }
    return best;
}

/// O(n^2) pair-counting AUROC with half credit for ties.
inline double pair_counting_auroc(std::span<const double> scores, std::span<const int> labels) {
    double credit = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) credit += 1.0;
            else if (scores[i] == scores[j]) credit += 0.5;
        }
    }
    return credit / static_cast<double>(pairs);
}

/// Average precision recomputed from scratch at every distinct threshold:
/// precision and recall are counted over the full arrays each time.
inline double threshold_scan_aupr(std::span<const double> scores, std::span<const int> labels) {
    std::vector<double> thresholds(scores.begin(), scores.end());
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::size_t total_pos = 0;
    for (const int label : labels) total_pos += static_cast<std::size_t>(label);

    double ap = 0.0;
    double prev_recall = 0.0;
    for (const double threshold : thresholds) {
        std::size_t kept = 0;
        std::size_t kept_pos = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] >= threshold) {
                ++kept;
                kept_pos += static_cast<std::size_t>(labels[i]);
            }
        }
        const double recall = static_cast<double>(kept_pos) / static_cast<double>(total_pos);
        if (recall > prev_recall) {
            const double precision = static_cast<double>(kept_pos) / static_cast<double>(kept);
            ap += precision * (recall - prev_recall);
            prev_recall = recall;
        }
    }
    return ap;
}

}  // namespace test_support
