#include "fitroom/model/scenario.hpp"

#include "fitroom/engine/errors.hpp"

#include <cmath>

namespace fitroom {

engine::ArrivalProfile ScenarioConfig::default_arrival_profile() {
    // Midday-peaked and symmetric; 317 expected arrivals per day.
    return engine::ArrivalProfile{{24.5, 36.0, 44.0, 54.0, 54.0, 44.0, 36.0, 24.5}, 1.0};
}

std::array<engine::DistributionSpec, 3> ScenarioConfig::default_service_times() {
    // About 0.77 staff-minutes per customer: roughly 45% utilisation at the
    // default load, leaving the cubicles as the bottleneck as load grows.
    return {
        engine::DistributionSpec::triangular(0.1, 0.35, 0.6),
        engine::DistributionSpec::triangular(0.2, 0.6, 1.0),
        engine::DistributionSpec::triangular(0.1, 0.3, 0.5),
    };
}

void ScenarioConfig::validate() const {
    arrivals.validate();
    if (cubicles < 1) throw ConfigError("cubicles", "must be >= 1");
    if (staff_count != 1) throw ConfigError("staff", "only a single staff member is supported");
    service[0].validate("service.job1");
    service[1].validate("service.job2");
    service[2].validate("service.job3");
    fitting.validate("service.fitting");
    if (!std::isfinite(p_help) || p_help < 0.0 || p_help > 1.0) {
        throw ConfigError("help.probability", "must lie in [0, 1]");
    }
    help_fraction.validate("help.request_fraction");
    if (help_fraction.quantile(0.0) > 1.0 || help_fraction.quantile(1.0 - 0x1.0p-53) > 1.0) {
        throw ConfigError("help.request_fraction", "fraction of fitting time must not exceed 1");
    }
    if (patience) patience->validate("patience");
    proactive.validate();
    if (!std::isfinite(speedup_fraction) || speedup_fraction < 0.0 || speedup_fraction >= 1.0) {
        throw ConfigError("proactive.speedup", "must lie in [0, 1)");
    }
    if (horizon != kBusinessDay) throw ConfigError("horizon", "the business day is fixed at 480 minutes");
    if (replications < 1) throw ConfigError("replications", "must be >= 1");
}

}  // namespace fitroom
