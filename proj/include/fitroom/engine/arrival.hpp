#pragma once

#include "fitroom/engine/random_stream.hpp"
#include "fitroom/engine/sim_time.hpp"

#include <array>
#include <optional>

namespace fitroom::engine {

/// Customers per hour for each opening hour, times a load multiplier.
struct ArrivalProfile {
    std::array<double, kOpeningHours> hourly_rates{};
    double scale = 1.0;

    /// Arrivals per minute in effect at time `t` (0 outside the business day).
    double rate_per_minute(SimTime t) const;

    /// Expected arrivals over the whole day.
    double expected_daily_arrivals() const;

    /// Throws ConfigError when a rate is negative/non-finite or scale <= 0.
    void validate() const;
};

/// Next arrival of the piecewise-constant non-homogeneous Poisson process
/// strictly after `now`. Draws one unit exponential and spends it against the
/// integrated rate hour by hour, carrying the residual across boundaries.
/// Returns nullopt when the next arrival would fall at or after closing.
std::optional<SimTime> next_arrival(const ArrivalProfile& profile, SimTime now, RandomStream& stream);

}  // namespace fitroom::engine
