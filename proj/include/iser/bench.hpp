#pragma once

// Multi-method benchmark harness: per dataset, grid-search psi by mean AUROC
// across repeats, report best-psi statistics and Friedman mean ranks. Every
// cell draws its stream from (master seed, dataset index, psi, repeat), so
// results do not depend on the order methods are listed or executed. Also
// hosts the runtime scaling harness.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "iser/csv.hpp"
#include "iser/dataset.hpp"
#include "iser/detector.hpp"
#include "iser/errors.hpp"
#include "iser/metrics.hpp"
#include "iser/random.hpp"
#include "iser/scoring.hpp"

namespace iser {

struct BenchPlan {
    std::vector<Method> methods;
    std::vector<std::string> dataset_paths;
    std::size_t repeats = 5;
    std::vector<std::size_t> psi_grid = {2, 4, 8, 16, 32, 64, 128, 256};
    std::size_t t = 200;
    std::size_t n_trees = 100;
    std::uint64_t seed = 1;
    bool normalize = false;
    std::string label_column = "label";
};

struct BenchRow {
    std::string dataset;
    Method method;
    std::size_t best_psi;
    RepeatAggregate stats;
};

struct BenchResult {
    std::vector<BenchRow> rows;  ///< dataset-major, methods in canonical order
    EvalReport report;
};

namespace detail {

/// Plan methods deduplicated into canonical enum order.
inline std::vector<Method> canonical_methods(const std::vector<Method>& requested) {
    std::vector<Method> out;
    for (const Method m : all_methods) {
        if (std::find(requested.begin(), requested.end(), m) != requested.end()) out.push_back(m);
    }
    return out;
}

}  // namespace detail

inline BenchResult run_bench(const BenchPlan& plan, unsigned threads = 0) {
    if (plan.methods.empty()) throw DataError("bench plan needs at least one method");
    if (plan.dataset_paths.empty()) throw DataError("bench plan needs at least one dataset");
    if (plan.repeats < 1) throw DataError("repeats must be at least 1");
    if (plan.psi_grid.empty()) throw DataError("psi grid must not be empty");
    for (const std::size_t psi : plan.psi_grid) {
        if (psi < 2) throw DataError("psi grid values must be at least 2");
    }

    const std::vector<Method> methods = detail::canonical_methods(plan.methods);
    BenchResult result;
    Matrix auroc_table(plan.dataset_paths.size(), methods.size());

    for (std::size_t di = 0; di < plan.dataset_paths.size(); ++di) {
        const std::string& path = plan.dataset_paths[di];
        Dataset data = ingest_csv(path, plan.label_column);
        if (plan.normalize) data = minmax_normalize(data);

        std::vector<std::size_t> grid;
        for (const std::size_t psi : plan.psi_grid) {
            if (psi <= data.n()) grid.push_back(psi);
        }
        if (grid.empty()) {
            throw DataError(path + ": every psi grid value exceeds the dataset size");
        }

        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const Method method = methods[mi];
            bool have_best = false;
            std::size_t best_psi = 0;
            RepeatAggregate best;
            for (const std::size_t psi : grid) {
                std::vector<std::pair<double, double>> runs;
                runs.reserve(plan.repeats);
                for (std::size_t r = 0; r < plan.repeats; ++r) {
                    const std::uint64_t cell_seed = derive_seed(plan.seed, {di, psi, r});
                    DetectorParams params;
                    params.psi = psi;
                    params.t = plan.t;
                    params.n_trees = plan.n_trees;
                    params.subsample = method == Method::IForest ? psi : 0;
                    params.seed = cell_seed;
                    const Detector detector = Detector::fit(data, method, params, threads);
                    const ScoreVector scores = detector.score_all(data, threads);
                    runs.emplace_back(auroc(scores.scores, *data.labels),
                                      aupr(scores.scores, *data.labels));
                }
                const RepeatAggregate agg = aggregate_repeats(runs);
                if (!have_best || agg.auroc_mean > best.auroc_mean) {
                    have_best = true;
                    best = agg;
                    best_psi = psi;
                }
            }
            result.rows.push_back({path, method, best_psi, best});
            auroc_table(di, mi) = best.auroc_mean;
        }
    }

    // report: per-method averages of the per-dataset best-psi statistics
    const auto n_datasets = static_cast<double>(plan.dataset_paths.size());
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        RepeatAggregate summary;
        summary.n_repeats = plan.repeats;
        for (const BenchRow& row : result.rows) {
            if (row.method != methods[mi]) continue;
            summary.auroc_mean += row.stats.auroc_mean / n_datasets;
            summary.auroc_std += row.stats.auroc_std / n_datasets;
            summary.aupr_mean += row.stats.aupr_mean / n_datasets;
            summary.aupr_std += row.stats.aupr_std / n_datasets;
        }
        result.report.per_method[method_name(methods[mi])] = summary;
    }
    if (methods.size() >= 2) {
        const std::vector<double> ranks = friedman_mean_ranks(auroc_table);
        result.report.mean_ranks.emplace();
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            (*result.report.mean_ranks)[method_name(methods[mi])] = ranks[mi];
        }
    }
    return result;
}

inline void write_bench_csv(const std::string& path, const BenchResult& result) {
    std::string out = "dataset,method,best_psi,auroc_mean,auroc_std,aupr_mean,aupr_std,repeats\n";
    for (const BenchRow& row : result.rows) {
        out += row.dataset;
        out += ',';
        out += method_name(row.method);
        out += ',';
        out += std::to_string(row.best_psi);
        out += ',';
        out += format_double(row.stats.auroc_mean);
        out += ',';
        out += format_double(row.stats.auroc_std);
        out += ',';
        out += format_double(row.stats.aupr_mean);
        out += ',';
        out += format_double(row.stats.aupr_std);
        out += ',';
        out += std::to_string(row.stats.n_repeats);
        out += '\n';
    }
    write_text_file(path, out);
}

// --- runtime scaling ----------------------------------------------------

struct ScalabilityPlan {
    Method method = Method::IserS;
    std::vector<std::size_t> sizes = {1000, 10000};
    std::vector<std::size_t> dims = {8};
    std::size_t repeats = 3;
    std::size_t psi = 16;
    std::size_t t = 200;
    std::size_t n_trees = 100;
    std::uint64_t seed = 1;
};

struct ScalabilityCell {
    std::size_t n;
    std::size_t d;
    double median_seconds;
};

/// Isotropic standard-normal cloud, deterministic in the seed.
inline Dataset gaussian_cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
    Dataset data;
    data.points = Matrix(n, d);
    RngStream stream(seed);
    for (double& v : data.points.values) v = stream.normal();
    return data;
}

/// Wall-clock fit+score time per (n, d) cell, median over repeats.
inline std::vector<ScalabilityCell> run_scalability(const ScalabilityPlan& plan,
                                                    unsigned threads = 0) {
    if (plan.repeats < 1) throw DataError("repeats must be at least 1");
    std::vector<ScalabilityCell> cells;
    DetectorParams params;
    params.psi = plan.psi;
    params.t = plan.t;
    params.n_trees = plan.n_trees;
    for (const std::size_t n : plan.sizes) {
        for (const std::size_t d : plan.dims) {
            if (n == 0 || d == 0) throw DataError("sizes and dims must be positive");
            const Dataset data = gaussian_cloud(n, d, derive_seed(plan.seed, {n, d}));
            std::vector<double> seconds;
            seconds.reserve(plan.repeats);
            for (std::size_t r = 0; r < plan.repeats; ++r) {
                params.seed = derive_seed(plan.seed, {n, d, r});
                const auto start = std::chrono::steady_clock::now();
                const Detector detector = Detector::fit(data, plan.method, params, threads);
                const ScoreVector scores = detector.score_all(data, threads);
                const auto stop = std::chrono::steady_clock::now();
                (void)scores;
                seconds.push_back(std::chrono::duration<double>(stop - start).count());
            }
            std::sort(seconds.begin(), seconds.end());
            const std::size_t mid = seconds.size() / 2;
            const double median = seconds.size() % 2 == 1
                                      ? seconds[mid]
                                      : 0.5 * (seconds[mid - 1] + seconds[mid]);
            cells.push_back({n, d, median});
        }
    }
    return cells;
}

inline void write_scalability_csv(const std::string& path, Method method,
                                  const std::vector<ScalabilityCell>& cells) {
    std::string out = "n,d,method,median_seconds\n";
    for (const ScalabilityCell& cell : cells) {
        out += std::to_string(cell.n);
        out += ',';
        out += std::to_string(cell.d);
        out += ',';
        out += method_name(method);
        out += ',';
        out += format_double(cell.median_seconds);
        out += '\n';
    }
    write_text_file(path, out);
}

}  // namespace iser
