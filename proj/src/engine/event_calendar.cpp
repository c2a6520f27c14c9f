#include "fitroom/engine/event_calendar.hpp"

#include "fitroom/engine/errors.hpp"

#include <string>

namespace fitroom::engine {

std::uint64_t EventCalendar::schedule(SimTime time, std::uint32_t kind, std::uint64_t target,
                                      std::uint64_t payload) {
    if (!(time >= clock_)) {
        throw ModelError("event scheduled in the past: t=" + std::to_string(time) +
                         " clock=" + std::to_string(clock_));
    }
    Event e{time, next_seq_++, kind, target, payload};
    pending_.push(e);
    return e.seq;
}

std::optional<Event> EventCalendar::advance() {
    if (pending_.empty()) return std::nullopt;
    Event e = pending_.top();
    if (e.time > horizon_) {
        pending_ = {};
        clock_ = horizon_;
        return std::nullopt;
    }
    pending_.pop();
    clock_ = e.time;
    return e;
}

}  // namespace fitroom::engine
