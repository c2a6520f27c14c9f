#include "fitroom/des/des_model.hpp"

#include "fitroom/engine/arrival.hpp"
#include "fitroom/engine/errors.hpp"

namespace fitroom::des {

using model::QueueKind;
using model::TraceKind;
using proactive::Job;

void CubicleBank::reserve() {
    if (free() == 0) throw ModelError("no free cubicle to reserve");
    ++reserved_;
}

void CubicleBank::occupy_reserved() {
    if (reserved_ == 0) throw ModelError("cubicle occupied without a reservation");
    --reserved_;
    ++occupied_;
}

void CubicleBank::release() {
    if (occupied_ == 0) throw ModelError("released a cubicle nobody occupied");
    --occupied_;
}

DesModel::DesModel(const ScenarioConfig& config, std::uint64_t replication, model::RunOptions options)
    : config_(config),
      options_(std::move(options)),
      streams_(config.master_seed, replication),
      recorder_(config_, options_),
      calendar_(config.horizon),
      cubicles_(static_cast<std::size_t>(config.cubicles)) {
    table_.normal = config.service;
    table_.speedup_fraction = config.speedup_fraction;
}

model::RunResult DesModel::run() {
    if (ran_) throw ModelError("DesModel::run called twice");
    ran_ = true;

    if (auto first = engine::next_arrival(config_.arrivals, 0.0, streams_.arrivals)) {
        calendar_.schedule(*first, Arrival);
    }
    const auto& policy = config_.proactive;
    if (policy.enabled && policy.check_mode == proactive::CheckMode::Polling) {
        calendar_.schedule(engine::sample(policy.poll_interval, streams_.polling), PollCondition);
    }

    while (auto event = calendar_.advance()) {
        const SimTime now = event->time;
        bool state_changed = true;
        switch (event->kind) {
            case Arrival: handle_arrival(now); break;
            case JobDone: complete_job(now, event->target, static_cast<Job>(event->payload)); break;
            case HelpDue: request_help(now, event->target); break;
            case FittingDone: fitting_done(now, event->target); break;
            case PatienceExpired: renege(now, event->target); break;
            case RevertSpeed:
                state_changed = false;
                if (proactive::revert(table_, speedup_, event->payload)) {
                    recorder_.record(now, TraceKind::Revert);
                }
                break;
            case PollCondition:
                state_changed = false;
                poll_condition(now);
                break;
            default: throw ModelError("unknown DES event kind");
        }
        if (state_changed && policy.enabled && policy.check_mode == proactive::CheckMode::EventDriven) {
            proactive_check(now);
        }
        settle(now);
    }

    model::RunResult result;
    result.metrics = recorder_.finalize(speedup_.change_count);
    result.trace = recorder_.take_trace();
    return result;
}

void DesModel::handle_arrival(SimTime now) {
    const std::uint64_t id = recorder_.new_customer(now);
    customers_.push_back(Customer{streams_.draw_customer(config_)});
    recorder_.record(now, TraceKind::Arrival, id);

    queues_.join(QueueKind::Entry, id, now);
    recorder_.wait_started(id, now);
    if (const auto& patience = customers_[id].draws.patience) {
        calendar_.schedule(now + *patience, PatienceExpired, id);
    }
    if (auto next = engine::next_arrival(config_.arrivals, now, streams_.arrivals)) {
        calendar_.schedule(*next, Arrival);
    }
    dispatch_staff(now);
}

void DesModel::dispatch_staff(SimTime now) {
    if (staff_busy_) return;
    const auto queue = model::select_next(queues_, cubicles_.free() > 0);
    if (!queue) return;

    const model::Waiter waiter = queues_.pop(*queue);
    const std::uint64_t id = waiter.customer;
    Customer& c = customers_[id];
    recorder_.wait_ended(id, now);

    const Job job = model::job_for(*queue);
    switch (job) {
        case Job::Entry:
            cubicles_.reserve();
            c.stage = Stage::InEntryService;
            break;
        case Job::Help: c.stage = Stage::InHelpService; break;
        case Job::Return: c.stage = Stage::InReturnService; break;
    }

    const double duration = table_.duration(c.draws.job_normal[proactive::job_index(job)]);
    staff_busy_ = true;
    recorder_.staff_started(id, now, duration);
    recorder_.record(now, TraceKind::StartService, id, static_cast<std::uint8_t>(job));
    calendar_.schedule(now + duration, JobDone, id, static_cast<std::uint64_t>(job));
}

void DesModel::complete_job(SimTime now, std::uint64_t id, Job job) {
    recorder_.staff_finished();
    staff_busy_ = false;
    recorder_.record(now, TraceKind::EndService, id, static_cast<std::uint8_t>(job));
    dispatch_staff(now);
    switch (job) {
        case Job::Entry: complete_job1(now, id); break;
        case Job::Help: complete_job2(now, id); break;
        case Job::Return: complete_job3(now, id); break;
    }
}

void DesModel::complete_job1(SimTime now, std::uint64_t id) {
    Customer& c = customers_[id];
    cubicles_.occupy_reserved();
    recorder_.cubicles_changed(now, cubicles_.occupied());
    recorder_.record(now, TraceKind::EnterCubicle, id);
    c.stage = Stage::Fitting;

    calendar_.schedule(now + c.draws.fitting, FittingDone, id);
    if (c.draws.wants_help) {
        c.help_outstanding = true;
        calendar_.schedule(now + c.draws.help_fraction * c.draws.fitting, HelpDue, id);
    }
}

void DesModel::complete_job2(SimTime now, std::uint64_t id) {
    Customer& c = customers_[id];
    c.help_outstanding = false;
    if (c.fitting_done) {
        leave_cubicle(now, id);
    } else {
        c.stage = Stage::Fitting;
    }
}

void DesModel::complete_job3(SimTime now, std::uint64_t id) {
    customers_[id].stage = Stage::Left;
    recorder_.served(id);
    recorder_.record(now, TraceKind::Served, id);
}

void DesModel::request_help(SimTime now, std::uint64_t id) {
    Customer& c = customers_[id];
    c.stage = Stage::WaitingHelp;
    recorder_.record(now, TraceKind::RequestHelp, id);
    queues_.join(QueueKind::Help, id, now);
    recorder_.wait_started(id, now);
    dispatch_staff(now);
}

void DesModel::fitting_done(SimTime now, std::uint64_t id) {
    Customer& c = customers_[id];
    c.fitting_done = true;
    if (!c.help_outstanding) leave_cubicle(now, id);
}

void DesModel::leave_cubicle(SimTime now, std::uint64_t id) {
    Customer& c = customers_[id];
    cubicles_.release();
    recorder_.cubicles_changed(now, cubicles_.occupied());
    recorder_.record(now, TraceKind::LeaveCubicle, id);
    c.stage = Stage::WaitingReturn;
    queues_.join(QueueKind::Return, id, now);
    recorder_.wait_started(id, now);
    dispatch_staff(now);
}

void DesModel::renege(SimTime now, std::uint64_t id) {
    Customer& c = customers_[id];
    if (c.stage != Stage::WaitingEntry) return;  // service already started
    if (!queues_.remove(QueueKind::Entry, id)) throw ModelError("reneging customer missing from entry queue");
    recorder_.wait_ended(id, now);
    recorder_.reneged(id);
    recorder_.record(now, TraceKind::Reneged, id);
    c.stage = Stage::Left;
}

void DesModel::proactive_check(SimTime now) {
    if (!proactive::check_condition(queues_.lengths(), cubicles_.free(), config_.proactive)) return;
    const auto request = proactive::apply_speedup(table_, speedup_, config_.proactive, now, streams_.revert_delay);
    recorder_.record(now, request.new_episode ? TraceKind::SpeedUp : TraceKind::SpeedUpRestart);
    calendar_.schedule(request.at, RevertSpeed, 0, request.ticket);
}

void DesModel::poll_condition(SimTime now) {
    proactive_check(now);
    calendar_.schedule(now + engine::sample(config_.proactive.poll_interval, streams_.polling), PollCondition);
}

void DesModel::settle(SimTime now) const {
    if (!options_.on_settled) return;
    model::StateSnapshot s;
    s.time = now;
    s.cubicles_occupied = cubicles_.occupied();
    s.cubicles_reserved = cubicles_.reserved();
    s.cubicle_capacity = cubicles_.capacity();
    s.queues = queues_.lengths();
    s.staff_busy = staff_busy_;
    s.mode = table_.mode;
    s.arrivals = recorder_.arrivals();
    s.served = recorder_.served_count();
    s.not_served = recorder_.not_served_count();
    s.in_system = recorder_.in_system();
    recorder_.settled(s);
}

model::RunResult run_des(const ScenarioConfig& config, std::uint64_t replication, const model::RunOptions& options) {
    DesModel model(config, replication, options);
    return model.run();
}

}  // namespace fitroom::des
