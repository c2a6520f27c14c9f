#pragma once

#include "fitroom/model/run_result.hpp"
#include "fitroom/model/scenario.hpp"
#include "fitroom/model/trace.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace fitroom::testing {

inline engine::DistributionSpec random_duration(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(0.0, scale);
    const double a = u(rng);
    const double b = a + u(rng);
    switch (rng() % 4) {
        case 0: return engine::DistributionSpec::deterministic(a);
        case 1: return engine::DistributionSpec::exponential_mean(b + 0.01);
        case 2: return engine::DistributionSpec::uniform(a, b);
        default: return engine::DistributionSpec::triangular(a, a + (b - a) * 0.3, b);
    }
}

/// A valid scenario drawn from a wide box around the defaults.
inline ScenarioConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ScenarioConfig c;
    for (auto& r : c.arrivals.hourly_rates) r = u(rng) < 0.1 ? 0.0 : 90.0 * u(rng);
    c.arrivals.scale = 0.25 + 2.75 * u(rng);
    c.cubicles = 1 + static_cast<int>(rng() % 12);
    for (auto& s : c.service) s = random_duration(rng, 1.5);
    c.fitting = random_duration(rng, 12.0);
    c.p_help = u(rng) < 0.2 ? std::round(u(rng)) : u(rng);
    const double lo = 0.9 * u(rng);
    c.help_fraction = engine::DistributionSpec::uniform(lo, lo + (1.0 - lo) * u(rng));
    if (u(rng) < 0.2) {
        c.patience.reset();
    } else {
        c.patience = random_duration(rng, 40.0);
    }
    c.proactive.enabled = u(rng) < 0.7;
    c.proactive.threshold = {1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6),
                             1 + static_cast<int>(rng() % 6)};
    c.proactive.revert_delay = random_duration(rng, 20.0);
    if (u(rng) < 0.3) {
        c.proactive.check_mode = proactive::CheckMode::Polling;
        c.proactive.poll_interval = engine::DistributionSpec::exponential_mean(0.2 + 3.0 * u(rng));
    }
    c.speedup_fraction = 0.9 * u(rng);
    c.wait_estimator = u(rng) < 0.5 ? WaitEstimator::ServedOnly : WaitEstimator::AllCustomers;
    c.master_seed = rng();
    c.replications = 1;
    return c;
}

/// Every distribution deterministic, help always or never, no proactive policy.
/// Arrivals stay Poisson.
inline ScenarioConfig random_deterministic_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ScenarioConfig c;
    for (auto& r : c.arrivals.hourly_rates) r = 80.0 * u(rng);
    c.arrivals.scale = 0.5 + 2.0 * u(rng);
    c.cubicles = 1 + static_cast<int>(rng() % 10);
    for (auto& s : c.service) s = engine::DistributionSpec::deterministic(0.05 + 1.2 * u(rng));
    c.fitting = engine::DistributionSpec::deterministic(1.0 + 12.0 * u(rng));
    c.p_help = static_cast<double>(rng() % 2);
    c.help_fraction = engine::DistributionSpec::deterministic(u(rng));
    if (u(rng) < 0.5) {
        c.patience.reset();
    } else {
        c.patience = engine::DistributionSpec::deterministic(5.0 + 30.0 * u(rng));
    }
    c.proactive.enabled = false;
    c.master_seed = rng();
    c.replications = 1;
    return c;
}

/// Collects invariant violations seen in snapshots and final metrics.
struct InvariantCheck {
    std::vector<std::string> violations;
    double last_time = 0.0;

    void on_snapshot(const model::StateSnapshot& s) {
        if (s.time < last_time) violations.push_back("time went backwards");
        last_time = s.time;
        if (s.cubicles_occupied + s.cubicles_reserved > s.cubicle_capacity) violations.push_back("cubicles overfull");
        if (s.arrivals != s.served + s.not_served + s.in_system) violations.push_back("conservation");
        if (s.queues.entry + s.queues.help + s.queues.ret > s.in_system) violations.push_back("queues exceed system");
    }

    void on_result(const ScenarioConfig& c, const model::RunResult& r) {
        const auto& m = r.metrics;
        if (m.arrivals != m.served + m.not_served) violations.push_back("final conservation");
        if (m.reneged > m.not_served) violations.push_back("reneged exceeds not served");
        if (!(m.staff_util >= 0.0 && m.staff_util <= 1.0 + 1e-12)) violations.push_back("staff util range");
        if (!(m.cubicle_util >= 0.0 && m.cubicle_util <= 1.0 + 1e-12)) violations.push_back("cubicle util range");
        if (!(m.mean_wait >= 0.0)) violations.push_back("negative wait");
        if (!c.proactive.enabled && m.service_time_changes != 0) violations.push_back("changes with policy off");
        if (!c.patience && m.reneged != 0) violations.push_back("renege with infinite patience");
    }

    model::RunOptions options() {
        model::RunOptions o;
        o.on_settled = [this](const model::StateSnapshot& s) { on_snapshot(s); };
        return o;
    }
};

}  // namespace fitroom::testing
