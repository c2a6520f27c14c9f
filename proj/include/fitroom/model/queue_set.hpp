#pragma once

#include "fitroom/engine/sim_time.hpp"
#include "fitroom/proactive/proactive.hpp"

#include <cstdint>
#include <deque>
#include <optional>

namespace fitroom::model {

enum class QueueKind : std::uint8_t { Entry, Help, Return };

/// The queue a customer waits in before the given job.
inline QueueKind queue_for(proactive::Job job) {
    switch (job) {
        case proactive::Job::Entry: return QueueKind::Entry;
        case proactive::Job::Help: return QueueKind::Help;
        case proactive::Job::Return: return QueueKind::Return;
    }
    return QueueKind::Entry;
}

inline proactive::Job job_for(QueueKind queue) {
    switch (queue) {
        case QueueKind::Entry: return proactive::Job::Entry;
        case QueueKind::Help: return proactive::Job::Help;
        case QueueKind::Return: return proactive::Job::Return;
    }
    return proactive::Job::Entry;
}

struct Waiter {
    std::uint64_t customer = 0;
    SimTime joined = 0.0;
    std::uint64_t join_seq = 0;  // global across the three queues
};

/// Entry, help and return FIFO queues with a shared join counter so that
/// joins at the same instant still have a total order.
class QueueSet {
public:
    void join(QueueKind queue, std::uint64_t customer, SimTime now);

    std::optional<Waiter> head(QueueKind queue) const;
    Waiter pop(QueueKind queue);

    /// Removes `customer` from the queue; false when absent.
    bool remove(QueueKind queue, std::uint64_t customer);

    std::size_t size(QueueKind queue) const { return of(queue).size(); }
    proactive::QueueLengths lengths() const;
    std::size_t total() const;

private:
    std::deque<Waiter>& of(QueueKind queue);
    const std::deque<Waiter>& of(QueueKind queue) const;

    std::deque<Waiter> entry_;
    std::deque<Waiter> help_;
    std::deque<Waiter> return_;
    std::uint64_t next_join_seq_ = 0;
};

/// Staff selection rule shared by both paradigms: among the queue heads that
/// may start (the entry head only when a cubicle can be reserved), the one
/// that joined earliest. Returns nullopt when nobody is eligible.
std::optional<QueueKind> select_next(const QueueSet& queues, bool cubicle_available);

}  // namespace fitroom::model
