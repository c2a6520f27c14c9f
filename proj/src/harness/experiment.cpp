#include "fitroom/harness/experiment.hpp"

#include "fitroom/abs/abs_model.hpp"
#include "fitroom/des/des_model.hpp"
#include "fitroom/engine/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace fitroom::harness {

std::string_view to_string(ModelKind model) { return model == ModelKind::Des ? "des" : "abs"; }

std::optional<ModelKind> parse_model(std::string_view text) {
    if (text == "des") return ModelKind::Des;
    if (text == "abs") return ModelKind::Abs;
    return std::nullopt;
}

std::vector<stats::RunMetrics> run_replications(const ScenarioConfig& config, ModelKind model, unsigned workers) {
    config.validate();
    const auto count = static_cast<std::size_t>(config.replications);
    std::vector<stats::RunMetrics> results(count);

    auto run_one = [&](std::size_t i) {
        results[i] = model == ModelKind::Des ? des::run_des(config, i).metrics : abs::run_abs(config, i).metrics;
    };

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) run_one(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        run_one(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

double SweepSpec::scale(int level) const { return std::pow(growth_factor, level - 1); }

void SweepSpec::validate() const {
    if (levels < 1) throw ConfigError("sweep.levels", "must be >= 1");
    if (!std::isfinite(growth_factor) || !(growth_factor > 0.0)) {
        throw ConfigError("sweep.factor", "must be finite and > 0");
    }
}

void add_rows(ExperimentReport& report, std::string_view model, int level, double arrival_scale,
              std::span<const stats::RunMetrics> runs) {
    std::vector<double> values(runs.size());
    for (stats::Measure measure : stats::kAllMeasures) {
        for (std::size_t i = 0; i < runs.size(); ++i) values[i] = stats::value_of(runs[i], measure);
        report.rows.push_back(ReportRow{std::string(model), level, arrival_scale, measure, stats::summarize(values)});
    }
}

ExperimentReport run_experiment(const ScenarioConfig& config, std::span<const ModelKind> models) {
    ExperimentReport report;
    for (ModelKind model : models) {
        const auto runs = run_replications(config, model);
        add_rows(report, to_string(model), 1, config.arrivals.scale, runs);
    }
    return report;
}

ExperimentReport sweep(const ScenarioConfig& config, const SweepSpec& spec, std::span<const ModelKind> models) {
    spec.validate();
    ExperimentReport report;
    for (ModelKind model : models) {
        for (int level = 1; level <= spec.levels; ++level) {
            ScenarioConfig scaled = config;
            scaled.arrivals.scale = spec.scale(level);
            const auto runs = run_replications(scaled, model);
            add_rows(report, to_string(model), level, scaled.arrivals.scale, runs);
        }
    }
    return report;
}

namespace {

std::vector<double> column(std::span<const stats::RunMetrics> runs, stats::Measure measure) {
    std::vector<double> out;
    out.reserve(runs.size());
    for (const auto& r : runs) out.push_back(stats::value_of(r, measure));
    return out;
}

}  // namespace

Comparison compare_experiments(const ScenarioConfig& config, std::span<const ModelKind> models,
                               const CompareOptions& options) {
    ScenarioConfig reactive = config;
    reactive.proactive.enabled = false;
    ScenarioConfig proactive = config;
    proactive.proactive.enabled = true;
    if (options.independent) proactive.master_seed = engine::mix_seed(config.master_seed, 0xB);

    Comparison out;
    for (ModelKind model : models) {
        ModelComparison mc;
        mc.model = model;
        mc.reactive = run_replications(reactive, model);
        mc.proactive = run_replications(proactive, model);

        const auto wait_a = column(mc.reactive, stats::Measure::MeanWait);
        const auto wait_b = column(mc.proactive, stats::Measure::MeanWait);
        const auto util_a = column(mc.reactive, stats::Measure::StaffUtil);
        const auto util_b = column(mc.proactive, stats::Measure::StaffUtil);
        mc.wait_test = stats::mann_whitney_u(wait_a, wait_b);
        mc.util_test = stats::mann_whitney_u(util_a, util_b);

        const std::string name(to_string(model));
        add_rows(out.report, name + "-A", 1, config.arrivals.scale, mc.reactive);
        add_rows(out.report, name + "-B", 1, config.arrivals.scale, mc.proactive);

        const bool des = model == ModelKind::Des;
        out.report.hypotheses.push_back(stats::decide(des ? stats::Hypothesis::H01 : stats::Hypothesis::H02,
                                                      mc.wait_test.p, options.alpha));
        out.report.hypotheses.push_back(stats::decide(des ? stats::Hypothesis::H03 : stats::Hypothesis::H04,
                                                      mc.util_test.p, options.alpha));
        out.models.push_back(std::move(mc));
    }
    std::stable_sort(out.report.hypotheses.begin(), out.report.hypotheses.end(),
                     [](const auto& l, const auto& r) { return l.label < r.label; });
    return out;
}

}  // namespace fitroom::harness
