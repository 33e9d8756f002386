#pragma once

// Uniform fit/score surface over the six detection methods, so harness code
// (CLI, benchmarks, grid export) does not branch on method internals.

#include <cstdint>
#include <span>
#include <variant>

#include "iser/baselines.hpp"
#include "iser/dataset.hpp"
#include "iser/isolation_forest.hpp"
#include "iser/partitioning.hpp"
#include "iser/scoring.hpp"

namespace iser {

struct DetectorParams {
    std::size_t psi = 16;       ///< hypersphere sample size (sphere methods)
    std::size_t t = 200;        ///< partitionings (sphere methods)
    std::size_t n_trees = 100;  ///< forest methods
    std::size_t subsample = 0;  ///< raw iforest; 0 resolves to min(256, n)
    std::uint64_t seed = 1;
};

inline constexpr std::uint64_t raw_forest_stream_tag = 0x0AF02E57;

/// A fitted detector. All methods are fit on the full (contaminated) input
/// and score with "higher = more anomalous" orientation.
class Detector {
public:
    static Detector fit(const Dataset& data, Method method, const DetectorParams& params,
                        unsigned threads = 0) {
        Detector detector;
        detector.method_ = method;
        const IserConfig config{params.psi, params.t, params.seed, false};
        switch (method) {
            case Method::IserA:
            case Method::IserS:
                detector.model_ = fit_partition_set(data, config, threads);
                break;
            case Method::Inne:
                detector.model_ = fit_inne(fit_partition_set(data, config, threads));
                break;
            case Method::Idk:
                detector.model_ = fit_idk(fit_partition_set(data, config, threads), data.points, threads);
                break;
            case Method::IserIf:
                detector.model_ = fit_iser_forest(data, config,
                                                  ForestParams{params.n_trees, params.subsample},
                                                  threads);
                break;
            case Method::IForest: {
                IsolationForestModel forest =
                    build_forest(data.points, params.n_trees,
                                 resolve_subsample(params.subsample, data.n()),
                                 derive_seed(params.seed, {raw_forest_stream_tag}), threads);
                detector.model_ = std::move(forest);
                break;
            }
        }
        return detector;
    }

    Method method() const { return method_; }

    double score(std::span<const double> x) const {
        switch (method_) {
            case Method::IserA:
                return score_avg(transform(std::get<PartitionSet>(model_), x));
            case Method::IserS:
                return score_sim(transform(std::get<PartitionSet>(model_), x));
            case Method::Inne:
                return inne_score(std::get<InneModel>(model_), x);
            case Method::Idk:
                return idk_score(std::get<IdkModel>(model_), x);
            case Method::IserIf:
                return score_iser_if(std::get<IsolationForestModel>(model_), x);
            case Method::IForest:
                return score_iforest(std::get<IsolationForestModel>(model_), x);
        }
        throw DataError("unreachable: unhandled method");
    }

    ScoreVector score_all(const Dataset& data, unsigned threads = 0) const {
        switch (method_) {
            case Method::IserA:
            case Method::IserS:
                return score_dataset(std::get<PartitionSet>(model_), data, method_, threads);
            case Method::Inne:
                return inne_scores(std::get<InneModel>(model_), data, threads);
            case Method::Idk:
                return idk_scores(std::get<IdkModel>(model_), data, threads);
            case Method::IserIf:
            case Method::IForest:
                return score_forest_dataset(std::get<IsolationForestModel>(model_), data, threads);
        }
        throw DataError("unreachable: unhandled method");
    }

    /// The fitted hypersphere ensemble, for methods that have one.
    const PartitionSet* partition_set() const {
        if (const auto* set = std::get_if<PartitionSet>(&model_)) return set;
        if (const auto* inne = std::get_if<InneModel>(&model_)) return &inne->partition_set;
        if (const auto* idk = std::get_if<IdkModel>(&model_)) return &idk->partition_set;
        if (const auto* forest = std::get_if<IsolationForestModel>(&model_)) {
            if (forest->phi_model) return &*forest->phi_model;
        }
        return nullptr;
    }

private:
    Detector() = default;

    Method method_ = Method::IserA;
    std::variant<PartitionSet, InneModel, IdkModel, IsolationForestModel> model_;
};

}  // namespace iser
