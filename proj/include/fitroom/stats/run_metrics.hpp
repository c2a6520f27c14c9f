#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace fitroom::stats {

/// Per-replication performance measures.
struct RunMetrics {
    double mean_wait = 0.0;     // minutes
    double staff_util = 0.0;    // busy / horizon
    double cubicle_util = 0.0;  // occupied cubicle-minutes / (capacity * horizon)
    std::uint64_t served = 0;
    std::uint64_t not_served = 0;
    std::uint64_t service_time_changes = 0;

    // Not reported in experiment tables; kept for diagnostics and tests.
    std::uint64_t arrivals = 0;
    std::uint64_t reneged = 0;
    double staff_busy_minutes = 0.0;
    double median_staff_minutes_per_served = 0.0;

    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

enum class Measure : std::uint8_t {
    MeanWait,
    StaffUtil,
    CubicleUtil,
    Served,
    NotServed,
    ServiceTimeChanges,
};

inline constexpr std::array<Measure, 6> kAllMeasures{
    Measure::MeanWait, Measure::StaffUtil,  Measure::CubicleUtil,
    Measure::Served,   Measure::NotServed, Measure::ServiceTimeChanges,
};

std::string_view to_string(Measure m);
bool parse_measure(std::string_view name, Measure& out);
double value_of(const RunMetrics& metrics, Measure m);

}  // namespace fitroom::stats
