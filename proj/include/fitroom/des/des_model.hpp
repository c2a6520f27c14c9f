#pragma once

#include "fitroom/engine/event_calendar.hpp"
#include "fitroom/model/queue_set.hpp"
#include "fitroom/model/run_recorder.hpp"
#include "fitroom/model/run_result.hpp"
#include "fitroom/model/scenario.hpp"
#include "fitroom/proactive/proactive.hpp"

#include <cstdint>
#include <vector>

namespace fitroom::des {

/// Counts of cubicles in use. A cubicle is reserved when entry service starts
/// and occupied when the customer walks in.
class CubicleBank {
public:
    explicit CubicleBank(std::size_t capacity) : capacity_(capacity) {}

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t occupied() const noexcept { return occupied_; }
    std::size_t reserved() const noexcept { return reserved_; }
    std::size_t free() const noexcept { return capacity_ - occupied_ - reserved_; }

    void reserve();
    void occupy_reserved();
    void release();

private:
    std::size_t capacity_;
    std::size_t occupied_ = 0;
    std::size_t reserved_ = 0;
};

enum class Stage : std::uint8_t {
    WaitingEntry,
    InEntryService,
    Fitting,
    WaitingHelp,
    InHelpService,
    WaitingReturn,
    InReturnService,
    Left,
};

/// A passive entity; its timing needs are drawn up front.
struct Customer {
    model::CustomerDraws draws;
    Stage stage = Stage::WaitingEntry;
    bool fitting_done = false;
    bool help_outstanding = false;
};

/// Process view of the fitting room: customers flow through entry, help and
/// return queues, served by one staff member gated by the cubicle bank.
class DesModel {
public:
    DesModel(const ScenarioConfig& config, std::uint64_t replication, model::RunOptions options = {});

    /// Runs the whole business day. Call once.
    model::RunResult run();

    // Calendar tags.
    enum EventKind : std::uint32_t {
        Arrival = 1,
        JobDone,
        HelpDue,
        FittingDone,
        PatienceExpired,
        RevertSpeed,
        PollCondition,
    };

private:
    void handle_arrival(SimTime now);
    void dispatch_staff(SimTime now);
    void complete_job(SimTime now, std::uint64_t id, proactive::Job job);
    void complete_job1(SimTime now, std::uint64_t id);
    void complete_job2(SimTime now, std::uint64_t id);
    void complete_job3(SimTime now, std::uint64_t id);
    void request_help(SimTime now, std::uint64_t id);
    void fitting_done(SimTime now, std::uint64_t id);
    void leave_cubicle(SimTime now, std::uint64_t id);
    void renege(SimTime now, std::uint64_t id);
    void proactive_check(SimTime now);
    void poll_condition(SimTime now);
    void settle(SimTime now) const;

    const ScenarioConfig& config_;
    model::RunOptions options_;
    model::RunStreams streams_;
    model::RunRecorder recorder_;
    engine::EventCalendar calendar_;
    model::QueueSet queues_;
    CubicleBank cubicles_;
    std::vector<Customer> customers_;
    bool staff_busy_ = false;
    proactive::ServiceTimeTable table_;
    proactive::SpeedupState speedup_;
    bool ran_ = false;
};

model::RunResult run_des(const ScenarioConfig& config, std::uint64_t replication,
                         const model::RunOptions& options = {});

}  // namespace fitroom::des
