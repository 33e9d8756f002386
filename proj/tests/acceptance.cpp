// Acceptance suite: every criterion prints one pass/fail line and the suite
// exits nonzero if any fails. Invoke with no arguments to run everything, or
// pass criterion numbers to run a subset (e.g. `iser_acceptance 1 5`).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "iser/iser.hpp"
#include "test_support.hpp"

using namespace iser;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& context) {
        if (!condition) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += "FAILED " + context;
        }
    }
    void note(const std::string& text) {
        if (!detail.empty()) detail += "; ";
        detail += text;
    }
};

std::string fmt(double v, int digits = 4) {
    std::ostringstream out;
    out.precision(digits);
    out << std::fixed << v;
    return out.str();
}

// ---------------------------------------------------------------------------
// 1. hypersphere golden example: radii (2,2,5,5); phi 0.5 and 0.8; iNNE 0 for
//    both points; IDK ties under the 5/3/3/2-count embedding.
// ---------------------------------------------------------------------------
Check criterion_1() {
    Check check;

    Dataset data;
    data.points = Matrix(4, 1);
    data.points.values = {0.0, 2.0, 10.0, 15.0};
    const PartitionSet model = fit_partition_set(data, IserConfig{4, 1, 7});

    std::map<double, double> radii;
    for (std::size_t j = 0; j < 4; ++j) {
        radii[model.partitions[0].centers(j, 0)] = model.partitions[0].radii[j];
    }
    check.require(radii.at(0.0) == 2.0 && radii.at(2.0) == 2.0, "radii of the dense pair equal 2");
    check.require(radii.at(10.0) == 5.0 && radii.at(15.0) == 5.0, "radii of the sparse pair equal 5");

    const std::array dense_point{2.5};
    const std::array sparse_point{11.0};
    check.require(phi(model.partitions[0], dense_point) == 0.5, "phi inside radius-2 sphere == 0.5");
    check.require(phi(model.partitions[0], sparse_point) == 0.8, "phi inside radius-5 sphere == 0.8");

    const InneModel inne = fit_inne(model);
    check.require(inne_score(inne, dense_point) == 0.0, "inne value 0 in the dense sphere");
    check.require(inne_score(inne, sparse_point) == 0.0, "inne value 0 in the sparse sphere");

    Matrix train(14, 1);
    train.values = {-1.5, -1.0, -0.5, 0.3, 0.9, 1.5, 2.3, 3.1, 8.0, 10.5, 12.0, 14.0, 16.0, 4.5};
    const IdkModel idk = fit_idk(model, train);
    check.require(idk.kme == std::vector<double>{5.0 / 14, 3.0 / 14, 3.0 / 14, 2.0 / 14},
                  "kme equals (5,3,3,2)/14");
    check.require(idk_score(idk, dense_point) == idk_score(idk, sparse_point),
                  "idk scores tie for the two points");

    check.note("phi 0.5/0.8, inne 0/0, idk tie at " + fmt(-idk_score(idk, dense_point), 3));
    return check;
}

// ---------------------------------------------------------------------------
// 2. scoring golden vectors.
// ---------------------------------------------------------------------------
Check criterion_2() {
    Check check;
    const std::array mostly_high{0.9, 0.9, 0.8, 0.9, 0.1};
    const std::array uniform_low{0.2, 0.3, 0.3, 0.2, 0.3};

    check.require(std::abs(score_sim(mostly_high) - 0.92) <= 0.005, "score_sim(high) == 0.92 +- 0.005");
    check.require(std::abs(score_sim(uniform_low) - 0.98) <= 0.005, "score_sim(low) == 0.98 +- 0.005");
    check.require(std::abs(score_avg(uniform_low) - 0.26) <= 1e-12, "score_avg(low) == 0.26");
    check.require(std::abs(score_avg(mostly_high) - 0.72) <= 1e-12, "score_avg(high) == 0.72");

    check.note("sim " + fmt(score_sim(mostly_high)) + "/" + fmt(score_sim(uniform_low)) +
               ", avg " + fmt(score_avg(uniform_low)) + "/" + fmt(score_avg(mostly_high)));
    return check;
}

// ---------------------------------------------------------------------------
// 3. global anomalies: ISER-A, ISER-S, iNNE, IDK all reach mean AUROC >= 0.99
//    and mean AUPR >= 0.95 (500+25 points, psi=16, t=200, 5 seeds).
// ---------------------------------------------------------------------------
Check criterion_3() {
    Check check;
    const std::vector<Method> methods{Method::IserA, Method::IserS, Method::Inne, Method::Idk};
    std::map<Method, std::vector<std::pair<double, double>>> runs;

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SynthSpec spec;
        spec.kind = SynthKind::Global;
        spec.n_normal = 500;
        spec.n_anomaly = 25;
        spec.seed = seed;
        const Dataset data = generate(spec);
        for (const Method method : methods) {
            DetectorParams params;
            params.psi = 16;
            params.t = 200;
            params.seed = seed;
            const Detector detector = Detector::fit(data, method, params);
            const ScoreVector scores = detector.score_all(data);
            runs[method].emplace_back(auroc(scores.scores, *data.labels),
                                      aupr(scores.scores, *data.labels));
        }
    }
    for (const Method method : methods) {
        const RepeatAggregate agg = aggregate_repeats(runs[method]);
        check.require(agg.auroc_mean >= 0.99,
                      std::string(method_name(method)) + " auroc " + fmt(agg.auroc_mean) + " >= 0.99");
        check.require(agg.aupr_mean >= 0.95,
                      std::string(method_name(method)) + " aupr " + fmt(agg.aupr_mean) + " >= 0.95");
        check.note(std::string(method_name(method)) + " " + fmt(agg.auroc_mean) + "/" +
                   fmt(agg.aupr_mean));
    }
    return check;
}

// ---------------------------------------------------------------------------
// 4. local anomalies on the spiral: with the best psi from {4..256} over 5
//    seeds, ISER-S mean AUROC >= 0.85 and >= IDK's best - 0.02.
// ---------------------------------------------------------------------------
Check criterion_4() {
    Check check;
    std::vector<Dataset> datasets;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SynthSpec spec;
        spec.kind = SynthKind::LocalSpiral;
        spec.n_normal = 500;
        spec.n_anomaly = 25;
        spec.seed = seed;
        datasets.push_back(generate(spec));
    }

    const std::vector<std::size_t> psi_grid{4, 8, 16, 32, 64, 128, 256};
    std::map<Method, double> best;
    std::map<Method, std::size_t> best_psi;
    for (const Method method : {Method::IserS, Method::Idk}) {
        best[method] = 0.0;
        for (const std::size_t psi : psi_grid) {
            double mean = 0.0;
            for (std::size_t s = 0; s < datasets.size(); ++s) {
                DetectorParams params;
                params.psi = psi;
                params.t = 200;
                params.seed = derive_seed(1, {psi, s});
                const Detector detector = Detector::fit(datasets[s], method, params);
                const ScoreVector scores = detector.score_all(datasets[s]);
                mean += auroc(scores.scores, *datasets[s].labels) / 5.0;
            }
            if (mean > best[method]) {
                best[method] = mean;
                best_psi[method] = psi;
            }
        }
    }

    check.require(best[Method::IserS] >= 0.85,
                  "iser-s best mean auroc " + fmt(best[Method::IserS]) + " >= 0.85");
    check.require(best[Method::IserS] >= best[Method::Idk] - 0.02,
                  "iser-s " + fmt(best[Method::IserS]) + " >= idk " + fmt(best[Method::Idk]) +
                      " - 0.02");
    check.note("iser-s " + fmt(best[Method::IserS]) + " @ psi=" +
               std::to_string(best_psi[Method::IserS]) + ", idk " + fmt(best[Method::Idk]) +
               " @ psi=" + std::to_string(best_psi[Method::Idk]));
    return check;
}

// ---------------------------------------------------------------------------
// 5. inversion identity: the representation-space score equals one minus the
//    classic score of the same forest, within 1e-12, on 1000 random points.
// ---------------------------------------------------------------------------
Check criterion_5() {
    Check check;
    RngStream stream(314, 0);
    Dataset data;
    data.points = Matrix(600, 2);
    for (double& v : data.points.values) v = stream.normal(0.0, 2.0);

    const IsolationForestModel model =
        fit_iser_forest(data, IserConfig{16, 50, 8}, ForestParams{100, 0});
    IsolationForestModel raw;
    raw.trees = model.trees;
    raw.subsample = model.subsample;

    double max_gap = 0.0;
    for (int q = 0; q < 1000; ++q) {
        const std::array probe{stream.normal(0.0, 3.0), stream.normal(0.0, 3.0)};
        const double inverted = score_iser_if(model, probe);
        const double direct = score_iforest(raw, transform(*model.phi_model, probe));
        max_gap = std::max(max_gap, std::abs(inverted - (1.0 - direct)));
    }
    check.require(max_gap <= 1e-12, "max |iser_if - (1 - iforest_on_phi)| <= 1e-12");
    check.note("max gap " + fmt(max_gap, 17) + " over 1000 points");
    return check;
}

// ---------------------------------------------------------------------------
// 6. on the two-cluster and spiral demo data, the representation-space
//    forest beats the raw-space forest on at least 4 of 5 seeds each.
// ---------------------------------------------------------------------------
Check criterion_6() {
    Check check;
    for (const SynthKind kind : {SynthKind::TwoCluster, SynthKind::SpiralDemo}) {
        std::size_t wins = 0;
        std::string per_seed;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            SynthSpec spec;
            spec.kind = kind;
            spec.n_normal = 500;
            spec.n_anomaly = 25;
            spec.seed = seed;
            const Dataset data = generate(spec);

            DetectorParams params;
            params.psi = 64;
            params.t = 200;
            params.n_trees = 100;
            params.seed = seed;
            const Detector inverted = Detector::fit(data, Method::IserIf, params);
            const Detector raw = Detector::fit(data, Method::IForest, params);
            const double auroc_inverted =
                auroc(inverted.score_all(data).scores, *data.labels);
            const double auroc_raw = auroc(raw.score_all(data).scores, *data.labels);
            if (auroc_inverted > auroc_raw) ++wins;
            per_seed += (per_seed.empty() ? "" : " ") + fmt(auroc_inverted, 3) + ">" +
                        fmt(auroc_raw, 3);
        }
        check.require(wins >= 4, std::string(synth_kind_name(kind)) + " wins " +
                                     std::to_string(wins) + "/5 >= 4");
        check.note(std::string(synth_kind_name(kind)) + " " + std::to_string(wins) + "/5 (" +
                   per_seed + ")");
    }
    return check;
}

// ---------------------------------------------------------------------------
// 7. metric oracles: auroc equals O(n^2) pair counting and aupr equals a
//    threshold-scan average precision on 100 random tied instances.
// ---------------------------------------------------------------------------
Check criterion_7() {
    Check check;
    RngStream stream(987, 0);
    double max_roc_gap = 0.0;
    double max_pr_gap = 0.0;
    for (int instance = 0; instance < 100; ++instance) {
        const auto n = static_cast<std::size_t>(2 + stream.uniform_int(499));
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        const bool coarse = stream.uniform_int(2) == 0;  // coarse grids inject ties
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = coarse ? static_cast<double>(stream.uniform_int(10)) : stream.uniform01();
            labels[i] = stream.uniform_int(4) == 0 ? 1 : 0;
        }
        labels[0] = 1;
        labels[n - 1] = 0;
        max_roc_gap = std::max(max_roc_gap, std::abs(auroc(scores, labels) -
                                                     test_support::pair_counting_auroc(scores, labels)));
        max_pr_gap = std::max(max_pr_gap, std::abs(aupr(scores, labels) -
                                                   test_support::threshold_scan_aupr(scores, labels)));
    }
    check.require(max_roc_gap <= 1e-12, "auroc matches pair counting exactly");
    check.require(max_pr_gap <= 1e-12, "aupr matches the threshold scan exactly");
    check.note("max gaps " + fmt(max_roc_gap, 17) + " / " + fmt(max_pr_gap, 17));
    return check;
}

// ---------------------------------------------------------------------------
// 8. scalability: fit+score time ratio between n=100k and n=10k (d=8,
//    psi=16, t=200) stays within 20x, and the fitted model's serialized size
//    is identical for both runs.
// ---------------------------------------------------------------------------
Check criterion_8() {
    Check check;
    const IserConfig config{16, 200, 42};
    std::map<std::size_t, double> seconds;
    std::map<std::size_t, std::size_t> model_bytes;

    for (const std::size_t n : {std::size_t{10000}, std::size_t{100000}}) {
        const Dataset data = gaussian_cloud(n, 8, derive_seed(7, {n}));
        std::vector<double> times;
        for (int repeat = 0; repeat < 3; ++repeat) {
            const auto start = std::chrono::steady_clock::now();
            const PartitionSet model = fit_partition_set(data, config);
            const ScoreVector scores = score_dataset(model, data, Method::IserS);
            const auto stop = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double>(stop - start).count());
            if (repeat == 0) model_bytes[n] = serialize_partition_set(model).size();
            if (scores.scores.size() != n) check.require(false, "score count equals n");
        }
        std::sort(times.begin(), times.end());
        seconds[n] = times[1];  // median of 3
    }

    const double ratio = seconds[100000] / seconds[10000];
    check.require(ratio <= 20.0, "time ratio " + fmt(ratio, 2) + " <= 20");
    check.require(model_bytes[10000] == model_bytes[100000],
                  "model size independent of n (" + std::to_string(model_bytes[10000]) + " vs " +
                      std::to_string(model_bytes[100000]) + " bytes)");
    check.note("10k " + fmt(seconds[10000], 3) + "s, 100k " + fmt(seconds[100000], 3) +
               "s, ratio " + fmt(ratio, 2) + ", model " + std::to_string(model_bytes[10000]) +
               " B");
    return check;
}

// ---------------------------------------------------------------------------
// 9. determinism of the CLI: every command produces byte-identical data
//    artifacts across two runs and across sequential vs parallel execution.
// ---------------------------------------------------------------------------
namespace determinism {

const std::filesystem::path work_dir = std::filesystem::temp_directory_path() / "iser_acceptance";

std::string path(const std::string& name) { return (work_dir / name).string(); }

bool run(const std::string& args) {
    const std::string command = std::string(ISER_CLI_BIN) + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(command.c_str())) == 0;
}

/// Runs the command once per (run, threads) combination, redirecting the
/// named outputs, and checks all variants byte-match the first.
void compare_variants(Check& check, const std::string& label, const std::string& args_template,
                      const std::vector<std::string>& outputs) {
    std::vector<std::vector<std::string>> contents;
    for (const std::string threads : {"1", "2"}) {
        for (int run_index = 0; run_index < 2; ++run_index) {
            const std::string tag = "_t" + threads + "_r" + std::to_string(run_index);
            std::string args = args_template;
            std::vector<std::string> files;
            for (const std::string& out : outputs) {
                const std::string placeholder = "{" + out + "}";
                const std::string file = path(label + "_" + out + tag);
                for (std::size_t at = args.find(placeholder); at != std::string::npos;
                     at = args.find(placeholder)) {
                    args.replace(at, placeholder.size(), file);
                }
                files.push_back(file);
            }
            args += " --threads " + threads;
            if (!run(args)) {
                check.require(false, label + " exits 0");
                return;
            }
            std::vector<std::string> bytes;
            for (const std::string& file : files) bytes.push_back(test_support::read_file(file));
            contents.push_back(std::move(bytes));
        }
    }
    for (std::size_t v = 1; v < contents.size(); ++v) {
        for (std::size_t f = 0; f < outputs.size(); ++f) {
            check.require(contents[v][f] == contents[0][f],
                          label + " " + outputs[f] + " byte-identical across runs/threads");
        }
    }
}

}  // namespace determinism

Check criterion_9() {
    using namespace determinism;
    Check check;
    std::filesystem::create_directories(work_dir);

    // synth has no parallel path but must still be run-to-run stable
    const std::string dataset = path("base.csv");
    const std::string synth_args =
        "synth --kind local-spiral --n-normal 300 --n-anomaly 15 --seed 11 --out ";
    if (!run(synth_args + dataset) || !run(synth_args + path("base2.csv"))) {
        check.require(false, "synth exits 0");
        return check;
    }
    check.require(test_support::read_file(dataset) == test_support::read_file(path("base2.csv")),
                  "synth byte-identical across runs");

    compare_variants(check, "detect",
                     "detect --method iser-if --input " + dataset +
                         " --psi 16 --t 50 --trees 50 --seed 4 --scores-out {scores}"
                         " --metrics-out {metrics}",
                     {"scores", "metrics"});
    compare_variants(check, "bench",
                     "bench --methods iser-s,inne --inputs " + dataset +
                         " --repeats 2 --psi-grid 4,8 --t 50 --seed 6 --out-csv {csv}"
                         " --out-json {json}",
                     {"csv", "json"});
    compare_variants(check, "grid",
                     "grid --method idk --input " + dataset +
                         " --psi 8 --t 50 --seed 5 --resolution 24 --out-csv {csv}"
                         " --out-pgm {pgm}",
                     {"csv", "pgm"});

    // the runtime CSV's timing column is exempt; the identifying columns
    // must still match
    std::vector<std::string> shapes;
    for (const std::string threads : {"1", "2"}) {
        const std::string out = path("scal_t" + threads + ".csv");
        if (!run("scalability --method iser-a --sizes 300,600 --dims 2 --repeats 1 --psi 8"
                 " --t 20 --seed 2 --out-csv " + out + " --threads " + threads)) {
            check.require(false, "scalability exits 0");
            return check;
        }
        std::istringstream rows(test_support::read_file(out));
        std::string line;
        std::string shape;
        while (std::getline(rows, line)) {
            shape += line.substr(0, line.rfind(',')) + "\n";
        }
        shapes.push_back(shape);
    }
    check.require(shapes[0] == shapes[1], "scalability non-timing columns identical");

    check.note("synth/detect/bench/grid byte-stable, scalability shape-stable");
    return check;
}

struct Criterion {
    int id;
    std::string name;
    std::function<Check()> fn;
    double budget_seconds;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "hypersphere golden example", criterion_1, 1.0},
        {2, "scoring golden vectors", criterion_2, 1.0},
        {3, "global anomalies detected by all sphere methods", criterion_3, 30.0},
        {4, "local spiral ordering (iser-s vs idk)", criterion_4, 180.0},
        {5, "representation-space score inversion identity", criterion_5, 10.0},
        {6, "inverted forest beats raw forest on demo data", criterion_6, 120.0},
        {7, "metric implementations match brute-force oracles", criterion_7, 30.0},
        {8, "linear-in-n runtime, constant model size", criterion_8, 300.0},
        {9, "CLI determinism across runs and thread counts", criterion_9, 120.0},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    bool all_ok = true;
    for (const Criterion& criterion : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), criterion.id) == selected.end()) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Check check = criterion.fn();
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= criterion.budget_seconds) {
            check.require(false, "runtime " + fmt(elapsed, 1) + "s under " +
                                     fmt(criterion.budget_seconds, 0) + "s budget");
        }
        all_ok = all_ok && check.ok;
        std::cout << (check.ok ? "[PASS] " : "[FAIL] ") << criterion.id << ". " << criterion.name
                  << " (" << check.detail << ") [" << fmt(elapsed, 2) << "s]" << std::endl;
    }
    std::cout << (all_ok ? "acceptance: all criteria passed" : "acceptance: FAILURES above")
              << std::endl;
    return all_ok ? 0 : 1;
}
