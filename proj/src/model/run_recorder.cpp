#include "fitroom/model/run_recorder.hpp"

#include "fitroom/engine/errors.hpp"

#include <algorithm>

namespace fitroom::model {

using engine::StreamId;
using engine::StreamPurpose;

RunStreams::RunStreams(std::uint64_t master_seed, std::uint64_t replication)
    : arrivals(master_seed, StreamId{StreamPurpose::Arrivals, replication}),
      job1(master_seed, StreamId{StreamPurpose::Job1, replication}),
      job2(master_seed, StreamId{StreamPurpose::Job2, replication}),
      job3(master_seed, StreamId{StreamPurpose::Job3, replication}),
      fitting(master_seed, StreamId{StreamPurpose::Fitting, replication}),
      help_decision(master_seed, StreamId{StreamPurpose::HelpDecision, replication}),
      help_timing(master_seed, StreamId{StreamPurpose::HelpTiming, replication}),
      patience(master_seed, StreamId{StreamPurpose::Patience, replication}),
      revert_delay(master_seed, StreamId{StreamPurpose::RevertDelay, replication}),
      polling(master_seed, StreamId{StreamPurpose::Polling, replication}) {}

CustomerDraws RunStreams::draw_customer(const ScenarioConfig& config) {
    CustomerDraws d;
    d.wants_help = help_decision.uniform01() < config.p_help;
    d.job_normal[0] = engine::sample(config.service[0], job1);
    d.job_normal[1] = engine::sample(config.service[1], job2);
    d.job_normal[2] = engine::sample(config.service[2], job3);
    d.fitting = engine::sample(config.fitting, fitting);
    d.help_fraction = engine::sample(config.help_fraction, help_timing);
    if (config.patience) d.patience = engine::sample(*config.patience, patience);
    return d;
}

RunRecorder::RunRecorder(const ScenarioConfig& config, const RunOptions& options)
    : config_(config), options_(options) {}

std::uint64_t RunRecorder::new_customer(SimTime now) {
    CustomerLedger ledger;
    ledger.arrival = now;
    ledgers_.push_back(ledger);
    return ledgers_.size() - 1;
}

void RunRecorder::record(SimTime now, TraceKind kind, std::uint64_t customer, std::uint8_t job) {
    if (options_.keep_trace) trace_.push_back(TraceRecord{now, kind, customer, job});
}

void RunRecorder::wait_started(std::uint64_t id, SimTime now) {
    auto& c = ledgers_.at(id);
    if (c.waiting_since) throw ModelError("customer already waiting");
    c.waiting_since = now;
}

void RunRecorder::wait_ended(std::uint64_t id, SimTime now) {
    auto& c = ledgers_.at(id);
    if (!c.waiting_since) throw ModelError("customer was not waiting");
    c.queue_wait += now - *c.waiting_since;
    c.waiting_since.reset();
}

void RunRecorder::staff_started(std::uint64_t id, SimTime now, double duration) {
    if (busy_since_) throw ModelError("staff started a second job while busy");
    busy_since_ = now;
    current_duration_ = duration;
    ledgers_.at(id).staff_minutes += duration;
}

void RunRecorder::staff_finished() {
    if (!busy_since_) throw ModelError("staff finished while idle");
    busy_minutes_ += current_duration_;
    busy_since_.reset();
}

void RunRecorder::cubicles_changed(SimTime now, std::size_t occupied) {
    occupancy_integral_ += static_cast<double>(occupied_) * (now - occupancy_last_);
    occupancy_last_ = now;
    occupied_ = occupied;
}

void RunRecorder::served(std::uint64_t id) {
    auto& c = ledgers_.at(id);
    if (c.disposition != Disposition::InSystem) throw ModelError("served a customer who already left");
    c.disposition = Disposition::Served;
    ++served_;
}

void RunRecorder::reneged(std::uint64_t id) {
    auto& c = ledgers_.at(id);
    if (c.disposition != Disposition::InSystem) throw ModelError("renege by a customer who already left");
    c.disposition = Disposition::NotServedReneged;
    ++not_served_;
    ++reneged_;
}

stats::RunMetrics RunRecorder::finalize(std::uint64_t service_time_changes) {
    const SimTime close = config_.horizon;

    for (std::uint64_t id = 0; id < ledgers_.size(); ++id) {
        auto& c = ledgers_[id];
        if (c.disposition != Disposition::InSystem) continue;
        c.disposition = Disposition::NotServedAtClose;
        ++not_served_;
        record(close, TraceKind::NotServedAtClose, id);
    }

    double busy = busy_minutes_;
    if (busy_since_) busy += close - *busy_since_;
    cubicles_changed(close, occupied_);

    stats::RunMetrics m;
    m.arrivals = ledgers_.size();
    m.served = served_;
    m.not_served = not_served_;
    m.reneged = reneged_;
    m.service_time_changes = service_time_changes;
    m.staff_busy_minutes = busy;
    m.staff_util = busy / close;
    m.cubicle_util = occupancy_integral_ / (static_cast<double>(config_.cubicles) * close);

    double wait_total = 0.0;
    std::uint64_t wait_count = 0;
    std::vector<double> served_staff_minutes;
    served_staff_minutes.reserve(served_);
    for (const auto& c : ledgers_) {
        if (c.disposition == Disposition::Served) {
            wait_total += c.queue_wait;
            ++wait_count;
            served_staff_minutes.push_back(c.staff_minutes);
        } else if (config_.wait_estimator == WaitEstimator::AllCustomers) {
            wait_total += c.queue_wait + (c.waiting_since ? close - *c.waiting_since : 0.0);
            ++wait_count;
        }
    }
    m.mean_wait = wait_count > 0 ? wait_total / static_cast<double>(wait_count) : 0.0;

    if (!served_staff_minutes.empty()) {
        std::sort(served_staff_minutes.begin(), served_staff_minutes.end());
        const std::size_t n = served_staff_minutes.size();
        m.median_staff_minutes_per_served =
            n % 2 == 1 ? served_staff_minutes[n / 2]
                       : 0.5 * (served_staff_minutes[n / 2 - 1] + served_staff_minutes[n / 2]);
    }
    return m;
}

}  // namespace fitroom::model
