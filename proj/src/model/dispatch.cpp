#include "fitroom/model/queue_set.hpp"
#include "fitroom/model/trace.hpp"

#include "fitroom/engine/errors.hpp"

#include <algorithm>

namespace fitroom::model {

std::deque<Waiter>& QueueSet::of(QueueKind queue) {
    switch (queue) {
        case QueueKind::Entry: return entry_;
        case QueueKind::Help: return help_;
        case QueueKind::Return: return return_;
    }
    return entry_;
}

const std::deque<Waiter>& QueueSet::of(QueueKind queue) const {
    return const_cast<QueueSet*>(this)->of(queue);
}

void QueueSet::join(QueueKind queue, std::uint64_t customer, SimTime now) {
    of(queue).push_back(Waiter{customer, now, next_join_seq_++});
}

std::optional<Waiter> QueueSet::head(QueueKind queue) const {
    const auto& q = of(queue);
    if (q.empty()) return std::nullopt;
    return q.front();
}

Waiter QueueSet::pop(QueueKind queue) {
    auto& q = of(queue);
    if (q.empty()) throw ModelError("pop from an empty queue");
    Waiter w = q.front();
    q.pop_front();
    return w;
}

bool QueueSet::remove(QueueKind queue, std::uint64_t customer) {
    auto& q = of(queue);
    auto it = std::find_if(q.begin(), q.end(), [&](const Waiter& w) { return w.customer == customer; });
    if (it == q.end()) return false;
    q.erase(it);
    return true;
}

proactive::QueueLengths QueueSet::lengths() const {
    return {entry_.size(), help_.size(), return_.size()};
}

std::size_t QueueSet::total() const { return entry_.size() + help_.size() + return_.size(); }

std::optional<QueueKind> select_next(const QueueSet& queues, bool cubicle_available) {
    std::optional<QueueKind> best;
    std::optional<Waiter> best_head;
    for (QueueKind q : {QueueKind::Entry, QueueKind::Help, QueueKind::Return}) {
        if (q == QueueKind::Entry && !cubicle_available) continue;
        const auto h = queues.head(q);
        if (!h) continue;
        if (!best_head || h->joined < best_head->joined ||
            (h->joined == best_head->joined && h->join_seq < best_head->join_seq)) {
            best = q;
            best_head = h;
        }
    }
    return best;
}

}  // namespace fitroom::model

namespace fitroom::model {

std::string_view to_string(TraceKind kind) {
    switch (kind) {
        case TraceKind::Arrival: return "arrival";
        case TraceKind::StartService: return "start-service";
        case TraceKind::EndService: return "end-service";
        case TraceKind::EnterCubicle: return "enter-cubicle";
        case TraceKind::RequestHelp: return "request-help";
        case TraceKind::LeaveCubicle: return "leave-cubicle";
        case TraceKind::Served: return "served";
        case TraceKind::Reneged: return "reneged";
        case TraceKind::NotServedAtClose: return "not-served-at-close";
        case TraceKind::SpeedUp: return "speed-up";
        case TraceKind::SpeedUpRestart: return "speed-up-restart";
        case TraceKind::Revert: return "revert";
    }
    return "?";
}

}  // namespace fitroom::model
