#pragma once

#include "fitroom/engine/random_stream.hpp"
#include "fitroom/model/scenario.hpp"
#include "fitroom/model/trace.hpp"
#include "fitroom/stats/run_metrics.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace fitroom::model {

/// Customer attributes, drawn once at arrival from per-purpose streams so
/// that the k-th customer of a replication sees the same draws under every
/// policy and in both paradigms.
struct CustomerDraws {
    bool wants_help = false;
    std::array<double, 3> job_normal{};  // normal-mode durations of jobs 1..3
    double fitting = 0.0;
    double help_fraction = 0.0;
    std::optional<double> patience;  // nullopt = never reneges
};

/// All random streams of one replication.
class RunStreams {
public:
    RunStreams(std::uint64_t master_seed, std::uint64_t replication);

    CustomerDraws draw_customer(const ScenarioConfig& config);

    engine::RandomStream arrivals;
    engine::RandomStream job1;
    engine::RandomStream job2;
    engine::RandomStream job3;
    engine::RandomStream fitting;
    engine::RandomStream help_decision;
    engine::RandomStream help_timing;
    engine::RandomStream patience;
    engine::RandomStream revert_delay;
    engine::RandomStream polling;
};

enum class Disposition : std::uint8_t { InSystem, Served, NotServedReneged, NotServedAtClose };

struct CustomerLedger {
    SimTime arrival = 0.0;
    Disposition disposition = Disposition::InSystem;
    double queue_wait = 0.0;     // closed waiting episodes, minutes
    double staff_minutes = 0.0;  // service received
    std::optional<SimTime> waiting_since;
};

/// Bookkeeping shared by both paradigms: per-customer ledgers, staff and
/// cubicle time integrals, counters and the optional trace. Keeping the
/// arithmetic in one place makes the two models' metrics comparable bit for
/// bit.
class RunRecorder {
public:
    RunRecorder(const ScenarioConfig& config, const RunOptions& options);

    std::uint64_t new_customer(SimTime now);
    const CustomerLedger& customer(std::uint64_t id) const { return ledgers_.at(id); }
    std::size_t customer_count() const { return ledgers_.size(); }

    void record(SimTime now, TraceKind kind, std::uint64_t customer = 0, std::uint8_t job = 0);

    void wait_started(std::uint64_t id, SimTime now);
    void wait_ended(std::uint64_t id, SimTime now);

    void staff_started(std::uint64_t id, SimTime now, double duration);
    void staff_finished();

    void cubicles_changed(SimTime now, std::size_t occupied);

    void served(std::uint64_t id);
    void reneged(std::uint64_t id);

    std::uint64_t arrivals() const { return ledgers_.size(); }
    std::uint64_t served_count() const { return served_; }
    std::uint64_t not_served_count() const { return not_served_; }
    std::uint64_t in_system() const { return arrivals() - served_ - not_served_; }

    void settled(const StateSnapshot& snapshot) const {
        if (options_.on_settled) options_.on_settled(snapshot);
    }

    /// Closes the day: customers still inside become not served at close and
    /// time integrals are truncated at the horizon.
    stats::RunMetrics finalize(std::uint64_t service_time_changes);

    std::vector<TraceRecord> take_trace() { return std::move(trace_); }

private:
    const ScenarioConfig& config_;
    const RunOptions& options_;
    std::vector<CustomerLedger> ledgers_;
    std::vector<TraceRecord> trace_;

    std::uint64_t served_ = 0;
    std::uint64_t not_served_ = 0;
    std::uint64_t reneged_ = 0;

    double busy_minutes_ = 0.0;
    std::optional<SimTime> busy_since_;
    double current_duration_ = 0.0;

    double occupancy_integral_ = 0.0;
    std::size_t occupied_ = 0;
    SimTime occupancy_last_ = 0.0;
};

}  // namespace fitroom::model
