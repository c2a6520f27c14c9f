#pragma once

#include "fitroom/engine/event_calendar.hpp"
#include "fitroom/model/queue_set.hpp"
#include "fitroom/model/run_recorder.hpp"
#include "fitroom/model/run_result.hpp"
#include "fitroom/model/scenario.hpp"
#include "fitroom/proactive/proactive.hpp"

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fitroom::abs {

using AgentId = std::uint64_t;

inline constexpr AgentId kStaffAgent = 0;
inline constexpr AgentId kFittingRoomAgent = 1;
inline constexpr AgentId kFirstCustomerAgent = 2;

inline AgentId customer_agent(std::uint64_t customer) { return kFirstCustomerAgent + customer; }
inline std::uint64_t customer_of(AgentId agent) { return agent - kFirstCustomerAgent; }

enum class MessageKind : std::uint8_t {
    RequestEntry,
    RequestHelp,
    RequestReturn,
    Serve,
    ServiceDone,
    RequestCubicle,  // from staff: reserve for `subject`; from a customer: allocate the reservation
    CubicleGranted,
    CubicleReleased,
    Renege,  // timer -> customer when patience runs out; customer -> staff to withdraw
};

std::string_view to_string(MessageKind kind);

struct Message {
    AgentId sender = 0;
    AgentId receiver = 0;
    MessageKind kind = MessageKind::RequestEntry;
    SimTime send_time = 0.0;
    std::uint8_t job = 0;       // Serve / ServiceDone
    double work = 0.0;          // requests: normal-mode minutes of the job asked for
    std::uint64_t subject = 0;  // customer a staff-originated RequestCubicle is for
    std::uint64_t cubicle = 0;  // CubicleGranted / CubicleReleased
};

enum class CustomerState : std::uint8_t {
    Arrived,
    WaitingEntry,
    InEntryService,
    Fitting,
    WaitingHelp,
    InHelpService,
    WaitingReturn,
    InReturnService,
    Served,
    NotServed,
};

std::string_view to_string(CustomerState state);

/// Edges of the customer state chart.
bool is_chart_edge(CustomerState from, CustomerState to);

enum class StaffState : std::uint8_t { Idle, ServingEntry, ServingHelp, ServingReturn };

struct CustomerTransition {
    SimTime time = 0.0;
    std::uint64_t customer = 0;
    CustomerState from = CustomerState::Arrived;
    CustomerState to = CustomerState::Arrived;
};

/// Customer, staff and fitting-room agents on one calendar. Agents talk via
/// zero-latency messages: a message goes on a FIFO bus and is delivered at
/// its send time, after the handler that sent it returns and before the
/// calendar advances.
class AbsWorld {
public:
    AbsWorld(const ScenarioConfig& config, std::uint64_t replication, model::RunOptions options = {});
    ~AbsWorld();
    AbsWorld(const AbsWorld&) = delete;
    AbsWorld& operator=(const AbsWorld&) = delete;

    /// Runs the whole business day. Call once.
    model::RunResult run();

    // Finer-grained access, used by the state-chart tests.

    /// Handles the next calendar event and everything it causes. False once
    /// the day is over.
    bool step();

    /// Creates a customer agent at the current clock; it immediately asks for
    /// entry service. Returns the customer index.
    std::uint64_t spawn_customer(const model::CustomerDraws& draws);

    /// Queues a message on the bus. Unknown receivers raise ModelError at
    /// delivery.
    void send(Message message);

    /// Delivers queued messages until the bus is empty.
    void drain();

    /// Applies the receiver's state-chart edge for `message` right away.
    void deliver(const Message& message);

    /// Idle staff picks the next request (global first come first served,
    /// entry only with a free cubicle).
    void staff_scan();

    CustomerState customer_state(std::uint64_t customer) const;
    StaffState staff_state() const;
    std::vector<bool> cubicle_states() const;  // true = occupied
    std::size_t cubicles_reserved() const;
    proactive::QueueLengths staff_queue_lengths() const;
    std::size_t dropped_messages() const { return dropped_.size(); }
    const std::vector<std::string>& warnings() const { return dropped_; }
    const std::vector<CustomerTransition>& transitions() const { return transitions_; }
    SimTime now() const { return calendar_.now(); }

    enum EventKind : std::uint32_t {
        Arrival = 1,
        StaffJobDone,
        CustomerHelpDue,
        CustomerFittingDone,
        CustomerPatience,
        StaffRevertSpeed,
        StaffPollCondition,
    };

private:
    class CustomerAgent;
    class StaffAgent;
    class FittingRoomAgent;

    void on_arrival(SimTime now);
    void settle(SimTime now) const;
    void drop(const Message& message, std::string_view why);

    const ScenarioConfig& config_;
    model::RunOptions options_;
    model::RunStreams streams_;
    model::RunRecorder recorder_;
    engine::EventCalendar calendar_;
    std::deque<Message> bus_;
    std::vector<CustomerAgent> customers_;
    std::unique_ptr<StaffAgent> staff_;
    std::unique_ptr<FittingRoomAgent> room_;
    std::vector<std::string> dropped_;
    std::vector<CustomerTransition> transitions_;
    bool ran_ = false;
};

model::RunResult run_abs(const ScenarioConfig& config, std::uint64_t replication,
                         const model::RunOptions& options = {});

}  // namespace fitroom::abs
