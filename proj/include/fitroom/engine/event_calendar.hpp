#pragma once

#include "fitroom/engine/sim_time.hpp"

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

namespace fitroom::engine {

struct Event {
    SimTime time = 0.0;
    std::uint64_t seq = 0;      // assigned by the calendar on insertion
    std::uint32_t kind = 0;     // model-defined tag
    std::uint64_t target = 0;   // entity the event is addressed to
    std::uint64_t payload = 0;  // model-defined extra (job number, ticket, ...)
};

/// Future event list ordered by (time, seq). Simultaneous events run in
/// insertion order. Events beyond the horizon are never returned.
class EventCalendar {
public:
    explicit EventCalendar(SimTime horizon = kBusinessDay) : horizon_(horizon) {}

    /// Throws ModelError when `time` is earlier than the current clock.
    std::uint64_t schedule(SimTime time, std::uint32_t kind, std::uint64_t target = 0,
                           std::uint64_t payload = 0);

    /// Pops the earliest event and moves the clock to it. Returns nullopt when
    /// the calendar is empty or the next event lies past the horizon; in the
    /// latter case the remaining events are discarded and the clock is set to
    /// the horizon.
    std::optional<Event> advance();

    SimTime now() const noexcept { return clock_; }
    SimTime horizon() const noexcept { return horizon_; }
    bool empty() const noexcept { return pending_.empty(); }
    std::size_t size() const noexcept { return pending_.size(); }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const noexcept {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> pending_;
    SimTime clock_ = 0.0;
    SimTime horizon_;
    std::uint64_t next_seq_ = 0;
};

}  // namespace fitroom::engine
