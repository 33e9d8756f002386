#pragma once

// Command implementations behind the CLI. Flag parsing lives in the tool's
// main; these functions take plain option structs so they are directly
// callable from tests. Data artifacts they write are byte-reproducible for a
// fixed seed, independent of thread count (timings in the scalability CSV
// are the documented exception).

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iser/bench.hpp"
#include "iser/csv.hpp"
#include "iser/dataset.hpp"
#include "iser/detector.hpp"
#include "iser/errors.hpp"
#include "iser/grid.hpp"
#include "iser/metrics.hpp"
#include "iser/synthdata.hpp"

namespace iser {

namespace detail {

/// Loads a dataset, attaching labels from `label_column` when that column
/// exists. A column the user named explicitly must exist; the default name
/// is allowed to be absent (unlabeled data).
inline Dataset load_dataset(const std::string& path, const std::string& label_column,
                            bool column_explicit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::string header_line;
    if (!std::getline(in, header_line)) throw DataError(path + ": empty file");
    in.close();

    bool has_column = false;
    for (const auto& field : split_fields(header_line)) {
        if (field == label_column) {
            has_column = true;
            break;
        }
    }
    if (!has_column && column_explicit) {
        throw DataError(path + ": label column '" + label_column + "' not found");
    }
    return has_column ? ingest_csv(path, label_column) : ingest_csv(path);
}

inline void write_json_file(const std::string& path, const nlohmann::json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace detail

struct SynthCmd {
    std::string kind = "global";
    std::size_t n_normal = 500;
    std::optional<std::size_t> n_anomaly;  ///< default: n_normal / 20
    double noise = 0.1;
    std::uint64_t seed = 1;
    std::string out;
};

inline void run_synth(const SynthCmd& cmd) {
    SynthSpec spec;
    spec.kind = parse_synth_kind(cmd.kind);
    spec.n_normal = cmd.n_normal;
    spec.n_anomaly = cmd.n_anomaly.value_or(cmd.n_normal / 20);
    spec.noise = cmd.noise;
    spec.seed = cmd.seed;
    const Dataset data = generate(spec);
    write_dataset_csv(cmd.out, data);
    std::cout << "wrote " << cmd.out << " (" << data.n() << " rows, " << spec.n_anomaly
              << " anomalies)\n";
}

struct DetectCmd {
    std::string method;
    std::string input;
    std::size_t psi = 16;
    std::size_t t = 200;
    std::size_t trees = 100;
    std::size_t subsample = 0;  ///< raw iforest; 0 resolves to min(256, n)
    std::uint64_t seed = 1;
    std::string label_column = "label";
    bool label_column_explicit = false;
    bool normalize = false;
    std::string scores_out;
    std::optional<std::string> metrics_out;  ///< default: scores_out + ".metrics.json"
    std::optional<std::string> model_out;
    unsigned threads = 0;
};

inline void run_detect(const DetectCmd& cmd) {
    const Method method = parse_method(cmd.method);
    if (cmd.model_out && method == Method::IForest) {
        throw UsageError("--model-out requires a hypersphere-based method");
    }
    Dataset data = detail::load_dataset(cmd.input, cmd.label_column, cmd.label_column_explicit);
    if (cmd.normalize) data = minmax_normalize(data);

    DetectorParams params;
    params.psi = cmd.psi;
    params.t = cmd.t;
    params.n_trees = cmd.trees;
    params.subsample = cmd.subsample;
    params.seed = cmd.seed;
    const Detector detector = Detector::fit(data, method, params, cmd.threads);
    const ScoreVector scores = detector.score_all(data, cmd.threads);

    write_scores_csv(cmd.scores_out, scores.scores, data.labels);
    std::cout << "wrote " << cmd.scores_out << " (" << scores.scores.size() << " rows)\n";

    if (cmd.model_out) {
        save_partition_set_file(*detector.partition_set(), *cmd.model_out);
        std::cout << "wrote " << *cmd.model_out << "\n";
    }

    if (data.has_labels()) {
        std::size_t positives = 0;
        for (const int label : *data.labels) positives += static_cast<std::size_t>(label);
        if (positives == 0 || positives == data.n()) {
            std::cerr << "warning: single-class labels, skipping metrics\n";
            return;
        }
        const std::string metrics_path = cmd.metrics_out.value_or(cmd.scores_out + ".metrics.json");
        detail::write_json_file(metrics_path,
                                nlohmann::json{{"auroc", auroc(scores.scores, *data.labels)},
                                               {"aupr", aupr(scores.scores, *data.labels)}});
        std::cout << "wrote " << metrics_path << "\n";
    }
}

struct BenchCmd {
    std::vector<std::string> methods;
    std::vector<std::string> inputs;
    std::size_t repeats = 5;
    std::vector<std::size_t> psi_grid = {2, 4, 8, 16, 32, 64, 128, 256};
    std::size_t t = 200;
    std::size_t trees = 100;
    std::uint64_t seed = 1;
    bool normalize = false;
    std::string label_column = "label";
    std::string out_csv;
    std::string out_json;
    unsigned threads = 0;
};

inline void run_bench_cmd(const BenchCmd& cmd) {
    BenchPlan plan;
    for (const std::string& name : cmd.methods) plan.methods.push_back(parse_method(name));
    plan.dataset_paths = cmd.inputs;
    plan.repeats = cmd.repeats;
    plan.psi_grid = cmd.psi_grid;
    plan.t = cmd.t;
    plan.n_trees = cmd.trees;
    plan.seed = cmd.seed;
    plan.normalize = cmd.normalize;
    plan.label_column = cmd.label_column;

    const BenchResult result = run_bench(plan, cmd.threads);
    write_bench_csv(cmd.out_csv, result);
    detail::write_json_file(cmd.out_json, to_json(result.report));
    std::cout << "wrote " << cmd.out_csv << " (" << result.rows.size() << " rows) and "
              << cmd.out_json << "\n";
}

struct GridCmd {
    std::string method;
    std::string input;
    std::size_t psi = 16;
    std::size_t t = 200;
    std::size_t trees = 100;
    std::size_t subsample = 0;
    std::uint64_t seed = 1;
    std::string label_column = "label";
    bool normalize = false;
    std::size_t resolution = 50;
    std::optional<double> x_min, x_max, y_min, y_max;  ///< default: data box +10%
    std::string out_csv;
    std::optional<std::string> out_pgm;
    unsigned threads = 0;
};

inline void run_grid(const GridCmd& cmd) {
    const Method method = parse_method(cmd.method);
    Dataset data = detail::load_dataset(cmd.input, cmd.label_column, false);
    if (data.dim() != 2) {
        throw DataError(cmd.input + ": score grids need 2-D data, got " +
                        std::to_string(data.dim()) + " features");
    }
    if (cmd.normalize) data = minmax_normalize(data);

    GridSpec spec;
    spec.resolution = cmd.resolution;
    const auto box = detail::bounding_box(data.points, data.n());
    const double x_margin = 0.1 * (box.x_max - box.x_min);
    const double y_margin = 0.1 * (box.y_max - box.y_min);
    spec.x_min = cmd.x_min.value_or(box.x_min - (x_margin > 0.0 ? x_margin : 1.0));
    spec.x_max = cmd.x_max.value_or(box.x_max + (x_margin > 0.0 ? x_margin : 1.0));
    spec.y_min = cmd.y_min.value_or(box.y_min - (y_margin > 0.0 ? y_margin : 1.0));
    spec.y_max = cmd.y_max.value_or(box.y_max + (y_margin > 0.0 ? y_margin : 1.0));

    DetectorParams params;
    params.psi = cmd.psi;
    params.t = cmd.t;
    params.n_trees = cmd.trees;
    params.subsample = cmd.subsample;
    params.seed = cmd.seed;
    const Detector detector = Detector::fit(data, method, params, cmd.threads);

    const GridResult grid = score_grid(
        spec, [&](double x, double y) { return detector.score(std::array{x, y}); }, cmd.threads);
    write_grid_csv(cmd.out_csv, grid);
    std::cout << "wrote " << cmd.out_csv << " (" << grid.scores.size() << " cells)\n";
    if (cmd.out_pgm) {
        write_grid_pgm(*cmd.out_pgm, grid);
        std::cout << "wrote " << *cmd.out_pgm << "\n";
    }
}

struct ScalabilityCmd {
    std::string method = "iser-s";
    std::vector<std::size_t> sizes = {1000, 10000};
    std::vector<std::size_t> dims = {8};
    std::size_t repeats = 3;
    std::size_t psi = 16;
    std::size_t t = 200;
    std::size_t trees = 100;
    std::uint64_t seed = 1;
    std::string out_csv;
    unsigned threads = 0;
};

inline void run_scalability_cmd(const ScalabilityCmd& cmd) {
    ScalabilityPlan plan;
    plan.method = parse_method(cmd.method);
    plan.sizes = cmd.sizes;
    plan.dims = cmd.dims;
    plan.repeats = cmd.repeats;
    plan.psi = cmd.psi;
    plan.t = cmd.t;
    plan.n_trees = cmd.trees;
    plan.seed = cmd.seed;
    const auto cells = run_scalability(plan, cmd.threads);
    write_scalability_csv(cmd.out_csv, plan.method, cells);
    std::cout << "wrote " << cmd.out_csv << " (" << cells.size() << " cells)\n";
}

}  // namespace iser
