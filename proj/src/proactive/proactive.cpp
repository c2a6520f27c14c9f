#include "fitroom/proactive/proactive.hpp"

#include "fitroom/engine/errors.hpp"

#include <string>

namespace fitroom::proactive {

void ProactivePolicy::validate() const {
    if (threshold.entry < 1) throw ConfigError("proactive.threshold.entry", "threshold must be >= 1");
    if (threshold.help < 1) throw ConfigError("proactive.threshold.help", "threshold must be >= 1");
    if (threshold.ret < 1) throw ConfigError("proactive.threshold.return", "threshold must be >= 1");
    revert_delay.validate("proactive.revert_delay");
    poll_interval.validate("proactive.poll_interval");
    if (check_mode == CheckMode::Polling && !(poll_interval.mean() > 0.0)) {
        throw ConfigError("proactive.poll_interval", "polling interval must have a positive mean");
    }
}

std::optional<TriggerBranch> triggered_branch(const QueueLengths& queues, std::size_t free_cubicles,
                                              const ProactivePolicy& policy) {
    const auto at_least = [](std::size_t length, int threshold) {
        return length >= static_cast<std::size_t>(threshold);
    };
    if (free_cubicles > 0 && at_least(queues.entry, policy.threshold.entry)) {
        return TriggerBranch::EntryWithFreeCubicle;
    }
    if (at_least(queues.ret, policy.threshold.ret)) return TriggerBranch::Return;
    if (at_least(queues.help, policy.threshold.help)) return TriggerBranch::Help;
    return std::nullopt;
}

RevertRequest apply_speedup(ServiceTimeTable& table, SpeedupState& state, const ProactivePolicy& policy,
                            SimTime now, engine::RandomStream& revert_stream) {
    RevertRequest request;
    if (table.mode == ServiceMode::Normal) {
        table.mode = ServiceMode::Fast;
        ++state.change_count;
        request.new_episode = true;
    }
    request.ticket = state.next_ticket++;
    request.at = now + engine::sample(policy.revert_delay, revert_stream);
    state.pending_revert = request.ticket;
    return request;
}

bool revert(ServiceTimeTable& table, SpeedupState& state, std::uint64_t ticket) {
    if (!state.pending_revert || *state.pending_revert != ticket) return false;
    table.mode = ServiceMode::Normal;
    state.pending_revert.reset();
    return true;
}

}  // namespace fitroom::proactive
