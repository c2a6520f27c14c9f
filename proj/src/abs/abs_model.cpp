#include "fitroom/abs/abs_model.hpp"

#include "fitroom/engine/arrival.hpp"
#include "fitroom/engine/errors.hpp"

#include <unordered_map>

namespace fitroom::abs {

using model::QueueKind;
using model::TraceKind;
using proactive::Job;

std::string_view to_string(MessageKind kind) {
    switch (kind) {
        case MessageKind::RequestEntry: return "RequestEntry";
        case MessageKind::RequestHelp: return "RequestHelp";
        case MessageKind::RequestReturn: return "RequestReturn";
        case MessageKind::Serve: return "Serve";
        case MessageKind::ServiceDone: return "ServiceDone";
        case MessageKind::RequestCubicle: return "RequestCubicle";
        case MessageKind::CubicleGranted: return "CubicleGranted";
        case MessageKind::CubicleReleased: return "CubicleReleased";
        case MessageKind::Renege: return "Renege";
    }
    return "?";
}

std::string_view to_string(CustomerState state) {
    switch (state) {
        case CustomerState::Arrived: return "Arrived";
        case CustomerState::WaitingEntry: return "WaitingEntry";
        case CustomerState::InEntryService: return "InEntryService";
        case CustomerState::Fitting: return "Fitting";
        case CustomerState::WaitingHelp: return "WaitingHelp";
        case CustomerState::InHelpService: return "InHelpService";
        case CustomerState::WaitingReturn: return "WaitingReturn";
        case CustomerState::InReturnService: return "InReturnService";
        case CustomerState::Served: return "Served";
        case CustomerState::NotServed: return "NotServed";
    }
    return "?";
}

bool is_chart_edge(CustomerState from, CustomerState to) {
    using S = CustomerState;
    // Closing time ends every visit that is still open.
    if (to == S::NotServed) return from != S::Served && from != S::NotServed;
    switch (from) {
        case S::Arrived: return to == S::WaitingEntry;
        case S::WaitingEntry: return to == S::InEntryService;
        case S::InEntryService: return to == S::Fitting;
        case S::Fitting: return to == S::WaitingHelp || to == S::WaitingReturn;
        case S::WaitingHelp: return to == S::InHelpService;
        case S::InHelpService: return to == S::Fitting || to == S::WaitingReturn;
        case S::WaitingReturn: return to == S::InReturnService;
        case S::InReturnService: return to == S::Served;
        case S::Served:
        case S::NotServed: return false;
    }
    return false;
}

// ---------------------------------------------------------------------------

class AbsWorld::CustomerAgent {
public:
    CustomerAgent(AbsWorld& world, std::uint64_t id, const model::CustomerDraws& draws)
        : world_(&world), id_(id), draws_(draws) {}

    CustomerState state() const { return state_; }
    AgentId agent() const { return customer_agent(id_); }

    void start(SimTime now) {
        become(now, CustomerState::WaitingEntry);
        world_->recorder_.wait_started(id_, now);
        if (draws_.patience) world_->calendar_.schedule(now + *draws_.patience, CustomerPatience, id_);
        world_->send(request(MessageKind::RequestEntry, Job::Entry));
    }

    void on_message(const Message& m) {
        const SimTime now = world_->now();
        switch (m.kind) {
            case MessageKind::Serve: return on_serve(now, m);
            case MessageKind::ServiceDone: return on_service_done(now, m);
            case MessageKind::CubicleGranted: return on_granted(now, m);
            case MessageKind::Renege: return on_renege(now, m);
            default: return world_->drop(m, "customer has no edge for this message");
        }
    }

    void on_help_due(SimTime now) {
        if (state_ != CustomerState::Fitting) throw ModelError("help due outside the cubicle");
        become(now, CustomerState::WaitingHelp);
        world_->recorder_.record(now, TraceKind::RequestHelp, id_);
        world_->recorder_.wait_started(id_, now);
        world_->send(request(MessageKind::RequestHelp, Job::Help));
    }

    void on_fitting_done(SimTime now) {
        fitting_done_ = true;
        if (!help_outstanding_) leave_cubicle(now);
    }

    void on_patience() {
        world_->send(Message{agent(), agent(), MessageKind::Renege, world_->now()});
    }

    void close(SimTime now) {
        if (state_ != CustomerState::Served && state_ != CustomerState::NotServed) {
            become(now, CustomerState::NotServed);
        }
    }

private:
    Message request(MessageKind kind, Job job) const {
        Message m{agent(), kStaffAgent, kind, world_->now()};
        m.job = static_cast<std::uint8_t>(job);
        m.work = draws_.job_normal[proactive::job_index(job)];
        return m;
    }

    void become(SimTime now, CustomerState next) {
        if (!is_chart_edge(state_, next)) {
            throw ModelError("customer state chart has no edge " + std::string(to_string(state_)) + " -> " +
                             std::string(to_string(next)));
        }
        if (world_->options_.keep_trace) world_->transitions_.push_back({now, id_, state_, next});
        state_ = next;
    }

    void on_serve(SimTime now, const Message& m) {
        CustomerState next;
        switch (static_cast<Job>(m.job)) {
            case Job::Entry: next = CustomerState::InEntryService; break;
            case Job::Help: next = CustomerState::InHelpService; break;
            case Job::Return: next = CustomerState::InReturnService; break;
            default: return world_->drop(m, "serve for an unknown job");
        }
        if (!is_chart_edge(state_, next)) return world_->drop(m, "serve in a non-waiting state");
        world_->recorder_.wait_ended(id_, now);
        become(now, next);
    }

    void on_service_done(SimTime now, const Message& m) {
        switch (static_cast<Job>(m.job)) {
            case Job::Entry:
                // Walk to the cubicle reserved when service started.
                world_->send(Message{agent(), kFittingRoomAgent, MessageKind::RequestCubicle, now});
                return;
            case Job::Help:
                help_outstanding_ = false;
                if (fitting_done_) {
                    leave_cubicle(now);
                } else {
                    become(now, CustomerState::Fitting);
                }
                return;
            case Job::Return:
                become(now, CustomerState::Served);
                world_->recorder_.served(id_);
                world_->recorder_.record(now, TraceKind::Served, id_);
                return;
        }
        world_->drop(m, "service done for an unknown job");
    }

    void on_granted(SimTime now, const Message& m) {
        if (state_ != CustomerState::InEntryService) return world_->drop(m, "cubicle granted outside entry service");
        cubicle_ = m.cubicle;
        become(now, CustomerState::Fitting);
        world_->calendar_.schedule(now + draws_.fitting, CustomerFittingDone, id_);
        if (draws_.wants_help) {
            help_outstanding_ = true;
            world_->calendar_.schedule(now + draws_.help_fraction * draws_.fitting, CustomerHelpDue, id_);
        }
    }

    void on_renege(SimTime now, const Message& m) {
        if (state_ != CustomerState::WaitingEntry) return world_->drop(m, "patience expired after service began");
        world_->recorder_.wait_ended(id_, now);
        world_->recorder_.reneged(id_);
        world_->recorder_.record(now, TraceKind::Reneged, id_);
        become(now, CustomerState::NotServed);
        world_->send(Message{agent(), kStaffAgent, MessageKind::Renege, now});
    }

    void leave_cubicle(SimTime now) {
        world_->recorder_.record(now, TraceKind::LeaveCubicle, id_);
        become(now, CustomerState::WaitingReturn);
        Message release{agent(), kFittingRoomAgent, MessageKind::CubicleReleased, now};
        release.cubicle = cubicle_;
        world_->send(release);
        world_->recorder_.wait_started(id_, now);
        world_->send(request(MessageKind::RequestReturn, Job::Return));
    }

    AbsWorld* world_;
    std::uint64_t id_;
    model::CustomerDraws draws_;
    CustomerState state_ = CustomerState::Arrived;
    bool fitting_done_ = false;
    bool help_outstanding_ = false;
    std::uint64_t cubicle_ = 0;
};

// ---------------------------------------------------------------------------

class AbsWorld::FittingRoomAgent {
public:
    FittingRoomAgent(AbsWorld& world, std::size_t capacity) : world_(&world), occupant_(capacity) {}

    std::size_t available() const { return free_count() - reserved_; }
    std::size_t reserved() const { return reserved_; }

    std::size_t occupied() const { return occupant_.size() - free_count(); }

    std::vector<bool> states() const {
        std::vector<bool> out;
        out.reserve(occupant_.size());
        for (const auto& o : occupant_) out.push_back(o.has_value());
        return out;
    }

    void on_message(const Message& m) {
        switch (m.kind) {
            case MessageKind::RequestCubicle:
                if (m.sender == kStaffAgent) return reserve();
                return allocate(m);
            case MessageKind::CubicleReleased: return release(m);
            default: return world_->drop(m, "fitting room has no edge for this message");
        }
    }

private:
    std::size_t free_count() const {
        std::size_t n = 0;
        for (const auto& o : occupant_) n += o.has_value() ? 0 : 1;
        return n;
    }

    void reserve() {
        if (available() == 0) throw ModelError("cubicle reserved with none available");
        ++reserved_;
    }

    // Lowest-indexed free cubicle goes to the requesting customer.
    void allocate(const Message& m) {
        if (reserved_ == 0) throw ModelError("cubicle requested without a reservation");
        std::size_t index = 0;
        while (index < occupant_.size() && occupant_[index]) ++index;
        if (index == occupant_.size()) throw ModelError("no free cubicle at grant time");
        const std::uint64_t customer = customer_of(m.sender);
        occupant_[index] = customer;
        --reserved_;

        const SimTime now = world_->now();
        world_->recorder_.cubicles_changed(now, occupied());
        world_->recorder_.record(now, TraceKind::EnterCubicle, customer);
        Message granted{kFittingRoomAgent, m.sender, MessageKind::CubicleGranted, now};
        granted.cubicle = index;
        world_->send(granted);
    }

    void release(const Message& m) {
        const std::uint64_t customer = customer_of(m.sender);
        if (m.cubicle >= occupant_.size() || occupant_[m.cubicle] != customer) {
            throw ModelError("cubicle released by a customer who does not hold it");
        }
        occupant_[m.cubicle].reset();
        world_->recorder_.cubicles_changed(world_->now(), occupied());
    }

    AbsWorld* world_;
    std::vector<std::optional<std::uint64_t>> occupant_;
    std::size_t reserved_ = 0;
};

// ---------------------------------------------------------------------------

class AbsWorld::StaffAgent {
public:
    StaffAgent(AbsWorld& world, const ScenarioConfig& config) : world_(&world) {
        table_.normal = config.service;
        table_.speedup_fraction = config.speedup_fraction;
    }

    StaffState state() const { return state_; }
    const model::QueueSet& requests() const { return requests_; }
    proactive::ServiceMode mode() const { return table_.mode; }
    std::uint64_t change_count() const { return speedup_.change_count; }

    void on_message(const Message& m) {
        const SimTime now = world_->now();
        switch (m.kind) {
            case MessageKind::RequestEntry:
            case MessageKind::RequestHelp:
            case MessageKind::RequestReturn: {
                const std::uint64_t customer = customer_of(m.sender);
                requests_.join(model::queue_for(static_cast<Job>(m.job)), customer, now);
                work_[customer] = m.work;
                if (state_ == StaffState::Idle) scan();
                return;
            }
            case MessageKind::Renege:
                if (!requests_.remove(QueueKind::Entry, customer_of(m.sender))) {
                    return world_->drop(m, "withdrawal for a request the staff does not hold");
                }
                work_.erase(customer_of(m.sender));
                return;
            default: return world_->drop(m, "staff has no edge for this message");
        }
    }

    void scan() {
        if (state_ != StaffState::Idle) return;
        const auto queue = model::select_next(requests_, world_->room_->available() > 0);
        if (!queue) return;

        const std::uint64_t customer = requests_.pop(*queue).customer;
        const Job job = model::job_for(*queue);
        const SimTime now = world_->now();
        if (job == Job::Entry) {
            Message reserve{kStaffAgent, kFittingRoomAgent, MessageKind::RequestCubicle, now};
            reserve.subject = customer;
            world_->send(reserve);
        }
        switch (job) {
            case Job::Entry: state_ = StaffState::ServingEntry; break;
            case Job::Help: state_ = StaffState::ServingHelp; break;
            case Job::Return: state_ = StaffState::ServingReturn; break;
        }

        const auto work = work_.find(customer);
        if (work == work_.end()) throw ModelError("staff lost the work estimate of a request");
        const double duration = table_.duration(work->second);
        work_.erase(work);

        world_->recorder_.staff_started(customer, now, duration);
        world_->recorder_.record(now, TraceKind::StartService, customer, static_cast<std::uint8_t>(job));
        world_->calendar_.schedule(now + duration, StaffJobDone, customer, static_cast<std::uint64_t>(job));
        Message serve{kStaffAgent, customer_agent(customer), MessageKind::Serve, now};
        serve.job = static_cast<std::uint8_t>(job);
        world_->send(serve);
    }

    void on_job_done(SimTime now, std::uint64_t customer, Job job) {
        world_->recorder_.staff_finished();
        world_->recorder_.record(now, TraceKind::EndService, customer, static_cast<std::uint8_t>(job));
        Message done{kStaffAgent, customer_agent(customer), MessageKind::ServiceDone, now};
        done.job = static_cast<std::uint8_t>(job);
        world_->send(done);
        state_ = StaffState::Idle;
        scan();
    }

    // Looks around after things settle; speeds up when congested.
    void monitor(SimTime now) {
        const auto& policy = world_->config_.proactive;
        if (!proactive::check_condition(requests_.lengths(), world_->room_->available(), policy)) return;
        const auto request = proactive::apply_speedup(table_, speedup_, policy, now, world_->streams_.revert_delay);
        world_->recorder_.record(now, request.new_episode ? TraceKind::SpeedUp : TraceKind::SpeedUpRestart);
        world_->calendar_.schedule(request.at, StaffRevertSpeed, kStaffAgent, request.ticket);
    }

    void on_revert(SimTime now, std::uint64_t ticket) {
        if (proactive::revert(table_, speedup_, ticket)) world_->recorder_.record(now, TraceKind::Revert);
    }

    void on_poll(SimTime now) {
        monitor(now);
        world_->calendar_.schedule(now + engine::sample(world_->config_.proactive.poll_interval,
                                                        world_->streams_.polling),
                                   StaffPollCondition, kStaffAgent);
    }

private:
    AbsWorld* world_;
    StaffState state_ = StaffState::Idle;
    model::QueueSet requests_;
    std::unordered_map<std::uint64_t, double> work_;
    proactive::ServiceTimeTable table_;
    proactive::SpeedupState speedup_;
};

// ---------------------------------------------------------------------------

AbsWorld::AbsWorld(const ScenarioConfig& config, std::uint64_t replication, model::RunOptions options)
    : config_(config),
      options_(std::move(options)),
      streams_(config.master_seed, replication),
      recorder_(config_, options_),
      calendar_(config.horizon),
      staff_(std::make_unique<StaffAgent>(*this, config)),
      room_(std::make_unique<FittingRoomAgent>(*this, static_cast<std::size_t>(config.cubicles))) {}

AbsWorld::~AbsWorld() = default;

void AbsWorld::send(Message message) { bus_.push_back(message); }

void AbsWorld::drain() {
    while (!bus_.empty()) {
        const Message m = bus_.front();
        bus_.pop_front();
        deliver(m);
    }
}

void AbsWorld::deliver(const Message& m) {
    if (m.send_time > now()) throw ModelError("message delivered before its send time");
    if (m.receiver == kStaffAgent) return staff_->on_message(m);
    if (m.receiver == kFittingRoomAgent) return room_->on_message(m);
    if (m.receiver >= kFirstCustomerAgent && customer_of(m.receiver) < customers_.size()) {
        return customers_[customer_of(m.receiver)].on_message(m);
    }
    throw ModelError("message for unknown agent " + std::to_string(m.receiver));
}

void AbsWorld::staff_scan() { staff_->scan(); }

void AbsWorld::drop(const Message& m, std::string_view why) {
    dropped_.push_back("t=" + std::to_string(now()) + " " + std::string(to_string(m.kind)) + " to agent " +
                       std::to_string(m.receiver) + " dropped: " + std::string(why));
}

std::uint64_t AbsWorld::spawn_customer(const model::CustomerDraws& draws) {
    const SimTime t = now();
    const std::uint64_t id = recorder_.new_customer(t);
    recorder_.record(t, TraceKind::Arrival, id);
    customers_.emplace_back(*this, id, draws);
    customers_.back().start(t);
    return id;
}

void AbsWorld::on_arrival(SimTime now) {
    spawn_customer(streams_.draw_customer(config_));
    if (auto next = engine::next_arrival(config_.arrivals, now, streams_.arrivals)) {
        calendar_.schedule(*next, Arrival);
    }
}

bool AbsWorld::step() {
    const auto event = calendar_.advance();
    if (!event) return false;
    const auto& policy = config_.proactive;
    const SimTime now = event->time;
    bool state_changed = true;
    switch (event->kind) {
        case Arrival: on_arrival(now); break;
        case StaffJobDone: staff_->on_job_done(now, event->target, static_cast<Job>(event->payload)); break;
        case CustomerHelpDue: customers_.at(event->target).on_help_due(now); break;
        case CustomerFittingDone: customers_.at(event->target).on_fitting_done(now); break;
        case CustomerPatience: customers_.at(event->target).on_patience(); break;
        case StaffRevertSpeed:
            state_changed = false;
            staff_->on_revert(now, event->payload);
            break;
        case StaffPollCondition:
            state_changed = false;
            staff_->on_poll(now);
            break;
        default: throw ModelError("unknown ABS event kind");
    }
    drain();
    if (state_changed && policy.enabled && policy.check_mode == proactive::CheckMode::EventDriven) {
        staff_->monitor(now);
    }
    settle(now);
    return true;
}

model::RunResult AbsWorld::run() {
    if (ran_) throw ModelError("AbsWorld::run called twice");
    ran_ = true;

    if (auto first = engine::next_arrival(config_.arrivals, 0.0, streams_.arrivals)) {
        calendar_.schedule(*first, Arrival);
    }
    const auto& policy = config_.proactive;
    if (policy.enabled && policy.check_mode == proactive::CheckMode::Polling) {
        calendar_.schedule(engine::sample(policy.poll_interval, streams_.polling), StaffPollCondition, kStaffAgent);
    }

    while (step()) {}

    for (auto& c : customers_) c.close(config_.horizon);

    model::RunResult result;
    result.metrics = recorder_.finalize(staff_->change_count());
    result.trace = recorder_.take_trace();
    return result;
}

CustomerState AbsWorld::customer_state(std::uint64_t customer) const { return customers_.at(customer).state(); }
StaffState AbsWorld::staff_state() const { return staff_->state(); }
std::vector<bool> AbsWorld::cubicle_states() const { return room_->states(); }
std::size_t AbsWorld::cubicles_reserved() const { return room_->reserved(); }
proactive::QueueLengths AbsWorld::staff_queue_lengths() const { return staff_->requests().lengths(); }

void AbsWorld::settle(SimTime now) const {
    if (!options_.on_settled) return;
    model::StateSnapshot s;
    s.time = now;
    s.cubicles_occupied = room_->occupied();
    s.cubicles_reserved = room_->reserved();
    s.cubicle_capacity = static_cast<std::size_t>(config_.cubicles);
    s.queues = staff_->requests().lengths();
    s.staff_busy = staff_->state() != StaffState::Idle;
    s.mode = staff_->mode();
    s.arrivals = recorder_.arrivals();
    s.served = recorder_.served_count();
    s.not_served = recorder_.not_served_count();
    s.in_system = recorder_.in_system();
    recorder_.settled(s);
}

model::RunResult run_abs(const ScenarioConfig& config, std::uint64_t replication, const model::RunOptions& options) {
    AbsWorld world(config, replication, options);
    return world.run();
}

}  // namespace fitroom::abs
