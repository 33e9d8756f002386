#pragma once

// Rank-based evaluation: AUROC via the Mann-Whitney rank statistic with half
// credit for ties, AUPR as step-wise average precision with tied scores
// grouped, repeat aggregation, and Friedman mean ranks across datasets.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "iser/dataset.hpp"
#include "iser/errors.hpp"

namespace iser {

/// Probability that a uniformly random positive outranks a uniformly random
/// negative, ties counted 0.5. Requires both classes.
inline double auroc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw DataError("auroc: scores/labels length mismatch");
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (const int label : labels) {
        if (label != 0 && label != 1) throw DataError("auroc: labels must be 0 or 1");
        n_pos += static_cast<std::size_t>(label);
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw DataError("auroc: needs at least one positive and one negative label");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double positive_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = static_cast<double>(i + 1 + j) / 2.0;  // 1-based ranks i+1..j
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1) positive_rank_sum += avg_rank;
        }
        i = j;
    }
    const double u = positive_rank_sum -
                     static_cast<double>(n_pos) * static_cast<double>(n_pos + 1) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

/// Average precision: scanning thresholds descending with ties grouped, sum
/// precision * delta-recall over the groups that introduce positives.
inline double aupr(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw DataError("aupr: scores/labels length mismatch");
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (const int label : labels) {
        if (label != 0 && label != 1) throw DataError("aupr: labels must be 0 or 1");
        n_pos += static_cast<std::size_t>(label);
    }
    if (n_pos == 0) throw DataError("aupr: needs at least one positive label");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    double ap = 0.0;
    std::size_t true_pos = 0;
    std::size_t false_pos = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        std::size_t group_pos = 0;
        while (j < n && scores[order[j]] == scores[order[i]]) {
            group_pos += static_cast<std::size_t>(labels[order[j]]);
            ++j;
        }
        true_pos += group_pos;
        false_pos += (j - i) - group_pos;
        if (group_pos > 0) {
            const double precision = static_cast<double>(true_pos) /
                                     static_cast<double>(true_pos + false_pos);
            ap += precision * (static_cast<double>(group_pos) / static_cast<double>(n_pos));
        }
        i = j;
    }
    return ap;
}

struct RepeatAggregate {
    double auroc_mean = 0.0;
    double auroc_std = 0.0;
    double aupr_mean = 0.0;
    double aupr_std = 0.0;
    std::size_t n_repeats = 0;
};

/// Arithmetic means and sample standard deviations over (auroc, aupr) runs.
/// A single run has std 0.
inline RepeatAggregate aggregate_repeats(const std::vector<std::pair<double, double>>& runs) {
    if (runs.empty()) throw DataError("aggregate_repeats: needs at least one run");
    RepeatAggregate agg;
    agg.n_repeats = runs.size();
    const auto k = static_cast<double>(runs.size());
    for (const auto& [roc, pr] : runs) {
        agg.auroc_mean += roc / k;
        agg.aupr_mean += pr / k;
    }
    if (runs.size() > 1) {
        double roc_var = 0.0;
        double pr_var = 0.0;
        for (const auto& [roc, pr] : runs) {
            roc_var += (roc - agg.auroc_mean) * (roc - agg.auroc_mean);
            pr_var += (pr - agg.aupr_mean) * (pr - agg.aupr_mean);
        }
        agg.auroc_std = std::sqrt(roc_var / (k - 1.0));
        agg.aupr_std = std::sqrt(pr_var / (k - 1.0));
    }
    return agg;
}

/// Per-method mean rank over a datasets x methods table of AUC values.
/// Within each dataset methods are ranked descending (best = 1); ties share
/// the average of the ranks they span.
inline std::vector<double> friedman_mean_ranks(const Matrix& auc_table) {
    if (auc_table.cols < 2) throw DataError("friedman_mean_ranks: needs at least 2 methods");
    if (auc_table.rows < 1) throw DataError("friedman_mean_ranks: needs at least 1 dataset");
    const std::size_t n_methods = auc_table.cols;
    std::vector<double> mean_ranks(n_methods, 0.0);
    std::vector<std::size_t> order(n_methods);
    for (std::size_t row = 0; row < auc_table.rows; ++row) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return auc_table(row, a) > auc_table(row, b);
        });
        std::size_t i = 0;
        while (i < n_methods) {
            std::size_t j = i;
            while (j < n_methods && auc_table(row, order[j]) == auc_table(row, order[i])) ++j;
            const double avg_rank = static_cast<double>(i + 1 + j) / 2.0;
            for (std::size_t k = i; k < j; ++k) mean_ranks[order[k]] += avg_rank;
            i = j;
        }
    }
    for (double& rank : mean_ranks) rank /= static_cast<double>(auc_table.rows);
    return mean_ranks;
}

/// Per-method evaluation summary, optionally with mean ranks across datasets.
struct EvalReport {
    std::map<std::string, RepeatAggregate> per_method;
    std::optional<std::map<std::string, double>> mean_ranks;
};

/// JSON layout: method names at the top level, plus an optional "mean_ranks"
/// object.
inline nlohmann::json to_json(const EvalReport& report) {
    nlohmann::json doc;
    for (const auto& [method, stats] : report.per_method) {
        doc[method] = {{"auroc_mean", stats.auroc_mean},
                       {"auroc_std", stats.auroc_std},
                       {"aupr_mean", stats.aupr_mean},
                       {"aupr_std", stats.aupr_std},
                       {"n_repeats", stats.n_repeats}};
    }
    if (report.mean_ranks) {
        doc["mean_ranks"] = *report.mean_ranks;
    }
    return doc;
}

}  // namespace iser
