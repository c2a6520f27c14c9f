#pragma once

#include "fitroom/model/scenario.hpp"
#include "fitroom/stats/mann_whitney.hpp"
#include "fitroom/stats/run_metrics.hpp"
#include "fitroom/stats/summary.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fitroom::harness {

enum class ModelKind : std::uint8_t { Des, Abs };

std::string_view to_string(ModelKind model);
std::optional<ModelKind> parse_model(std::string_view text);

/// Runs `config.replications` independent days. Replication i draws from
/// streams keyed by (master seed, i); the result order is by i no matter how
/// the work was scheduled. `workers` = 0 picks the hardware concurrency.
std::vector<stats::RunMetrics> run_replications(const ScenarioConfig& config, ModelKind model,
                                                unsigned workers = 0);

struct SweepSpec {
    int levels = 5;
    double growth_factor = 1.3;

    /// Arrival scale of level k (1-based): growth_factor^(k-1).
    double scale(int level) const;
    void validate() const;
};

struct ReportRow {
    std::string model;  // "des", "abs", or "des-A"/"des-B" in comparisons
    int level = 1;
    double arrival_scale = 1.0;
    stats::Measure measure = stats::Measure::MeanWait;
    stats::SummaryStats stats;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::vector<stats::HypothesisOutcome> hypotheses;

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Appends one row per measure for a batch of replications.
void add_rows(ExperimentReport& report, std::string_view model, int level, double arrival_scale,
              std::span<const stats::RunMetrics> runs);

/// Plain replications of the configured scenario, one report level.
ExperimentReport run_experiment(const ScenarioConfig& config, std::span<const ModelKind> models);

/// Replications at arrival scales growth_factor^0 .. growth_factor^(levels-1).
ExperimentReport sweep(const ScenarioConfig& config, const SweepSpec& spec, std::span<const ModelKind> models);

struct CompareOptions {
    bool independent = false;  // false: both experiments share random streams
    double alpha = 0.05;
};

struct ModelComparison {
    ModelKind model = ModelKind::Des;
    std::vector<stats::RunMetrics> reactive;   // experiment A, proactive off
    std::vector<stats::RunMetrics> proactive;  // experiment B, proactive on
    stats::MannWhitneyResult wait_test;
    stats::MannWhitneyResult util_test;
};

struct Comparison {
    ExperimentReport report;
    std::vector<ModelComparison> models;
};

/// Experiment A (reactive only) against experiment B (reactive plus
/// proactive): Mann-Whitney on mean wait (H01 DES, H02 ABS) and staff
/// utilisation (H03 DES, H04 ABS).
Comparison compare_experiments(const ScenarioConfig& config, std::span<const ModelKind> models,
                               const CompareOptions& options = {});

}  // namespace fitroom::harness
