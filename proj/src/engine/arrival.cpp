#include "fitroom/engine/arrival.hpp"

#include "fitroom/engine/errors.hpp"

#include <cmath>
#include <string>

namespace fitroom::engine {

double ArrivalProfile::rate_per_minute(SimTime t) const {
    if (t < 0.0 || t >= kBusinessDay) return 0.0;
    const auto hour = static_cast<std::size_t>(t / kMinutesPerHour);
    return hourly_rates[hour] * scale / kMinutesPerHour;
}

double ArrivalProfile::expected_daily_arrivals() const {
    double total = 0.0;
    for (double r : hourly_rates) total += r;
    return total * scale;
}

void ArrivalProfile::validate() const {
    for (std::size_t h = 0; h < hourly_rates.size(); ++h) {
        if (!std::isfinite(hourly_rates[h]) || hourly_rates[h] < 0.0) {
            throw ConfigError("arrival.rates[" + std::to_string(h) + "]", "rate must be finite and >= 0");
        }
    }
    if (!std::isfinite(scale) || !(scale > 0.0)) {
        throw ConfigError("arrival.scale", "scale must be finite and > 0");
    }
}

std::optional<SimTime> next_arrival(const ArrivalProfile& profile, SimTime now, RandomStream& stream) {
    double budget = -std::log1p(-stream.uniform01());
    SimTime t = now;
    while (t < kBusinessDay) {
        const auto hour = static_cast<std::size_t>(t / kMinutesPerHour);
        const SimTime hour_end = kMinutesPerHour * static_cast<double>(hour + 1);
        const double rate = profile.hourly_rates[hour] * profile.scale / kMinutesPerHour;
        const double mass = rate * (hour_end - t);
        if (rate > 0.0 && budget < mass) {
            const SimTime arrival = t + budget / rate;
            if (arrival >= kBusinessDay) return std::nullopt;
            return arrival;
        }
        budget -= mass;
        t = hour_end;
    }
    return std::nullopt;
}

}  // namespace fitroom::engine
