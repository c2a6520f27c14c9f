#pragma once

#include "fitroom/engine/distribution.hpp"
#include "fitroom/engine/random_stream.hpp"
#include "fitroom/engine/sim_time.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

namespace fitroom::proactive {

enum class Job : std::uint8_t { Entry = 1, Help = 2, Return = 3 };

inline std::size_t job_index(Job job) { return static_cast<std::size_t>(job) - 1; }

enum class ServiceMode : std::uint8_t { Normal, Fast };

/// Normal-mode duration laws for the three staff jobs plus the current speed.
/// A duration is always the normal-mode draw times the mode factor, so a fast
/// duration is exactly (1 - speedup_fraction) times the normal one for the
/// same underlying draw.
struct ServiceTimeTable {
    std::array<engine::DistributionSpec, 3> normal{
        engine::DistributionSpec::deterministic(0.0),
        engine::DistributionSpec::deterministic(0.0),
        engine::DistributionSpec::deterministic(0.0),
    };
    ServiceMode mode = ServiceMode::Normal;
    double speedup_fraction = 0.20;

    double factor() const { return mode == ServiceMode::Fast ? 1.0 - speedup_fraction : 1.0; }

    /// Draws the normal-mode duration for `job`. Mode is not applied.
    double draw_normal(Job job, engine::RandomStream& stream) const {
        return engine::sample(normal[job_index(job)], stream);
    }

    /// Duration of a job that starts now, given its normal-mode draw.
    double duration(double normal_draw) const { return normal_draw * factor(); }
};

enum class CheckMode : std::uint8_t { EventDriven, Polling };

struct Thresholds {
    int entry = 3;
    int help = 3;
    int ret = 3;
};

struct ProactivePolicy {
    bool enabled = true;
    Thresholds threshold;
    engine::DistributionSpec revert_delay = engine::DistributionSpec::exponential_mean(10.0);
    CheckMode check_mode = CheckMode::EventDriven;
    engine::DistributionSpec poll_interval = engine::DistributionSpec::exponential_mean(1.0);

    /// Throws ConfigError on thresholds < 1, invalid delays, or a polling
    /// interval whose mean is zero.
    void validate() const;
};

struct QueueLengths {
    std::size_t entry = 0;
    std::size_t help = 0;
    std::size_t ret = 0;
};

enum class TriggerBranch : std::uint8_t { EntryWithFreeCubicle, Return, Help };

/// The congestion test, branch by branch: a free cubicle with a long entry
/// queue, else a long return queue, else a long help queue.
std::optional<TriggerBranch> triggered_branch(const QueueLengths& queues, std::size_t free_cubicles,
                                              const ProactivePolicy& policy);

inline bool check_condition(const QueueLengths& queues, std::size_t free_cubicles,
                            const ProactivePolicy& policy) {
    return triggered_branch(queues, free_cubicles, policy).has_value();
}

struct SpeedupState {
    std::uint64_t change_count = 0;
    std::optional<std::uint64_t> pending_revert;  // ticket of the live revert event
    std::uint64_t next_ticket = 1;
};

/// What the caller must put on its calendar after a speedup.
struct RevertRequest {
    SimTime at = 0.0;
    std::uint64_t ticket = 0;
    bool new_episode = false;  // Normal -> Fast happened
};

/// Switches to fast service (counting the episode) or, when already fast,
/// restarts the revert delay. Services already in progress are untouched.
RevertRequest apply_speedup(ServiceTimeTable& table, SpeedupState& state, const ProactivePolicy& policy,
                            SimTime now, engine::RandomStream& revert_stream);

/// Restores normal service if `ticket` is the live revert; returns false for a
/// stale ticket (superseded by a later restart).
bool revert(ServiceTimeTable& table, SpeedupState& state, std::uint64_t ticket);

}  // namespace fitroom::proactive
