#pragma once

#include "fitroom/engine/sim_time.hpp"
#include "fitroom/proactive/proactive.hpp"

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace fitroom::model {

enum class TraceKind : std::uint8_t {
    Arrival,
    StartService,  // job = 1, 2 or 3
    EndService,
    EnterCubicle,
    RequestHelp,
    LeaveCubicle,
    Served,
    Reneged,
    NotServedAtClose,
    SpeedUp,         // Normal -> Fast
    SpeedUpRestart,  // re-trigger while Fast
    Revert,
};

std::string_view to_string(TraceKind kind);

/// One observable state change. Both paradigms emit the same records for the
/// same behaviour, which is what the cross-model equivalence checks compare.
struct TraceRecord {
    SimTime time = 0.0;
    TraceKind kind = TraceKind::Arrival;
    std::uint64_t customer = 0;
    std::uint8_t job = 0;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

inline bool is_policy_record(TraceKind kind) {
    return kind == TraceKind::SpeedUp || kind == TraceKind::SpeedUpRestart || kind == TraceKind::Revert;
}

/// System state after a calendar event and everything it caused has settled.
struct StateSnapshot {
    SimTime time = 0.0;
    std::size_t cubicles_occupied = 0;
    std::size_t cubicles_reserved = 0;
    std::size_t cubicle_capacity = 0;
    proactive::QueueLengths queues;
    bool staff_busy = false;
    proactive::ServiceMode mode = proactive::ServiceMode::Normal;
    std::uint64_t arrivals = 0;
    std::uint64_t served = 0;
    std::uint64_t not_served = 0;
    std::uint64_t in_system = 0;
};

struct RunOptions {
    bool keep_trace = false;
    std::function<void(const StateSnapshot&)> on_settled;  // optional
};

}  // namespace fitroom::model
