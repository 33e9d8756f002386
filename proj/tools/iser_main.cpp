// ISER command-line tool: synthetic data generation, anomaly detection,
// benchmarking, score-grid export, and runtime scaling measurements.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "iser/cli.hpp"

namespace {

void add_threads_flag(CLI::App* cmd, unsigned& threads) {
    cmd->add_option("--threads", threads, "Worker threads (0 = all hardware threads)")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ISER: isolation-based spherical ensemble anomaly detection"};
    app.require_subcommand(1);

    iser::SynthCmd synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a labelled 2-D synthetic dataset");
    synth_cmd->add_option("--kind", synth.kind,
                          "global | local-spiral | dependency | two-cluster | spiral-demo")
        ->capture_default_str();
    synth_cmd->add_option("--n-normal", synth.n_normal, "Normal points")->capture_default_str();
    synth_cmd->add_option("--n-anomaly", synth.n_anomaly, "Anomalies (default: n-normal / 20)");
    synth_cmd->add_option("--noise", synth.noise, "Generator noise scale")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--out", synth.out, "Output CSV path")->required();

    iser::DetectCmd detect;
    auto* detect_cmd = app.add_subcommand("detect", "Fit on a CSV dataset and score every row");
    detect_cmd->add_option("--method", detect.method,
                           "iser-a | iser-s | iser-if | inne | idk | iforest")
        ->required();
    detect_cmd->add_option("--input", detect.input, "Input CSV path")->required();
    detect_cmd->add_option("--psi", detect.psi, "Hypersphere sample size")->capture_default_str();
    detect_cmd->add_option("--t", detect.t, "Number of partitionings")->capture_default_str();
    detect_cmd->add_option("--trees", detect.trees, "Trees for forest methods")
        ->capture_default_str();
    detect_cmd->add_option("--subsample", detect.subsample,
                           "Tree subsample for iforest (0 = min(256, n))")
        ->capture_default_str();
    detect_cmd->add_option("--seed", detect.seed, "Random seed")->capture_default_str();
    auto* label_opt = detect_cmd->add_option("--label-col", detect.label_column,
                                             "Label column name")
                          ->capture_default_str();
    detect_cmd->add_flag("--normalize", detect.normalize, "Min-max normalize features first");
    detect_cmd->add_option("--scores-out", detect.scores_out, "Scores CSV path")->required();
    detect_cmd->add_option("--metrics-out", detect.metrics_out,
                           "Metrics JSON path (default: <scores-out>.metrics.json)");
    detect_cmd->add_option("--model-out", detect.model_out,
                           "Save the fitted hypersphere model (binary)");
    add_threads_flag(detect_cmd, detect.threads);

    iser::BenchCmd bench;
    auto* bench_cmd = app.add_subcommand("bench", "Grid-search psi and compare methods");
    bench_cmd->add_option("--methods", bench.methods, "Methods to compare")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--inputs", bench.inputs, "Labelled dataset CSVs")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--repeats", bench.repeats, "Repeats per cell")->capture_default_str();
    bench_cmd->add_option("--psi-grid", bench.psi_grid, "psi values to search")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--t", bench.t, "Number of partitionings")->capture_default_str();
    bench_cmd->add_option("--trees", bench.trees, "Trees for forest methods")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
    bench_cmd->add_flag("--normalize", bench.normalize, "Min-max normalize features first");
    bench_cmd->add_option("--label-col", bench.label_column, "Label column name")
        ->capture_default_str();
    bench_cmd->add_option("--out-csv", bench.out_csv, "Results CSV path")->required();
    bench_cmd->add_option("--out-json", bench.out_json, "Evaluation report JSON path")->required();
    add_threads_flag(bench_cmd, bench.threads);

    iser::GridCmd grid;
    auto* grid_cmd = app.add_subcommand("grid", "Export a 2-D score grid (CSV and optional PGM)");
    grid_cmd->add_option("--method", grid.method, "Detection method")->required();
    grid_cmd->add_option("--input", grid.input, "Input CSV path (2-D)")->required();
    grid_cmd->add_option("--psi", grid.psi, "Hypersphere sample size")->capture_default_str();
    grid_cmd->add_option("--t", grid.t, "Number of partitionings")->capture_default_str();
    grid_cmd->add_option("--trees", grid.trees, "Trees for forest methods")->capture_default_str();
    grid_cmd->add_option("--subsample", grid.subsample,
                         "Tree subsample for iforest (0 = min(256, n))")
        ->capture_default_str();
    grid_cmd->add_option("--seed", grid.seed, "Random seed")->capture_default_str();
    grid_cmd->add_option("--label-col", grid.label_column, "Label column to ignore")
        ->capture_default_str();
    grid_cmd->add_flag("--normalize", grid.normalize, "Min-max normalize features first");
    grid_cmd->add_option("--resolution", grid.resolution, "Mesh points per axis")
        ->capture_default_str();
    grid_cmd->add_option("--x-min", grid.x_min, "Grid x minimum (default: data box -10%)");
    grid_cmd->add_option("--x-max", grid.x_max, "Grid x maximum (default: data box +10%)");
    grid_cmd->add_option("--y-min", grid.y_min, "Grid y minimum (default: data box -10%)");
    grid_cmd->add_option("--y-max", grid.y_max, "Grid y maximum (default: data box +10%)");
    grid_cmd->add_option("--out-csv", grid.out_csv, "Grid CSV path")->required();
    grid_cmd->add_option("--out-pgm", grid.out_pgm, "Grayscale heatmap (binary PGM)");
    add_threads_flag(grid_cmd, grid.threads);

    iser::ScalabilityCmd scalability;
    auto* scalability_cmd =
        app.add_subcommand("scalability", "Measure fit+score wall time on synthetic data");
    scalability_cmd->add_option("--method", scalability.method, "Detection method")
        ->capture_default_str();
    scalability_cmd->add_option("--sizes", scalability.sizes, "Dataset sizes")
        ->delimiter(',')
        ->capture_default_str();
    scalability_cmd->add_option("--dims", scalability.dims, "Feature dimensionalities")
        ->delimiter(',')
        ->capture_default_str();
    scalability_cmd->add_option("--repeats", scalability.repeats, "Timed runs per cell")
        ->capture_default_str();
    scalability_cmd->add_option("--psi", scalability.psi, "Hypersphere sample size")
        ->capture_default_str();
    scalability_cmd->add_option("--t", scalability.t, "Number of partitionings")
        ->capture_default_str();
    scalability_cmd->add_option("--trees", scalability.trees, "Trees for forest methods")
        ->capture_default_str();
    scalability_cmd->add_option("--seed", scalability.seed, "Random seed")->capture_default_str();
    scalability_cmd->add_option("--out-csv", scalability.out_csv, "Runtime CSV path")->required();
    add_threads_flag(scalability_cmd, scalability.threads);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        detect.label_column_explicit = label_opt->count() > 0;
        if (synth_cmd->parsed()) iser::run_synth(synth);
        if (detect_cmd->parsed()) iser::run_detect(detect);
        if (bench_cmd->parsed()) iser::run_bench_cmd(bench);
        if (grid_cmd->parsed()) iser::run_grid(grid);
        if (scalability_cmd->parsed()) iser::run_scalability_cmd(scalability);
    } catch (const iser::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const iser::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
