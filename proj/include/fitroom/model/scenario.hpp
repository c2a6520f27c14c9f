#pragma once

#include "fitroom/engine/arrival.hpp"
#include "fitroom/engine/distribution.hpp"
#include "fitroom/engine/sim_time.hpp"
#include "fitroom/proactive/proactive.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace fitroom {

enum class WaitEstimator : std::uint8_t {
    ServedOnly,    // total queue wait averaged over served customers
    AllCustomers,  // includes partial waits of customers who were not served
};

/// Everything one replication needs. Defaults are the shipped calibration,
/// not measured values.
struct ScenarioConfig {
    engine::ArrivalProfile arrivals = default_arrival_profile();
    int cubicles = 8;
    int staff_count = 1;
    std::array<engine::DistributionSpec, 3> service = default_service_times();
    engine::DistributionSpec fitting = engine::DistributionSpec::triangular(4.0, 7.5, 12.0);
    double p_help = 0.2;
    engine::DistributionSpec help_fraction = engine::DistributionSpec::uniform(0.3, 0.7);
    std::optional<engine::DistributionSpec> patience = engine::DistributionSpec::exponential_mean(25.0);
    proactive::ProactivePolicy proactive;
    double speedup_fraction = 0.20;
    WaitEstimator wait_estimator = WaitEstimator::ServedOnly;
    SimTime horizon = kBusinessDay;
    int replications = 100;
    std::uint64_t master_seed = 1;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    static engine::ArrivalProfile default_arrival_profile();
    static std::array<engine::DistributionSpec, 3> default_service_times();
};

}  // namespace fitroom
