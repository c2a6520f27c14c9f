#include "fitroom/engine/errors.hpp"
#include "fitroom/engine/random_stream.hpp"
#include "fitroom/proactive/proactive.hpp"

#include <doctest.h>

using namespace fitroom;
using namespace fitroom::proactive;
using engine::DistributionSpec;
using engine::RandomStream;
using engine::StreamPurpose;

namespace {

ProactivePolicy policy_with(int threshold) {
    ProactivePolicy p;
    p.threshold = {threshold, threshold, threshold};
    return p;
}

}  // namespace

TEST_CASE("congestion check branches") {
    const auto p = policy_with(3);
    CHECK(check_condition({3, 0, 0}, 1, p));
    CHECK(triggered_branch({3, 0, 0}, 1, p) == TriggerBranch::EntryWithFreeCubicle);
    CHECK_FALSE(check_condition({3, 0, 0}, 0, p));  // long entry queue but no room
    CHECK(check_condition({0, 1, 3}, 0, p));
    CHECK(triggered_branch({0, 1, 3}, 0, p) == TriggerBranch::Return);
    CHECK_FALSE(check_condition({2, 2, 2}, 1, p));
    CHECK(triggered_branch({0, 3, 0}, 0, p) == TriggerBranch::Help);
    // Return is tested before help.
    CHECK(triggered_branch({0, 5, 5}, 0, p) == TriggerBranch::Return);
}

TEST_CASE("per-queue thresholds are independent") {
    ProactivePolicy p;
    p.threshold = {10, 2, 10};
    CHECK(check_condition({0, 2, 0}, 0, p));
    CHECK_FALSE(check_condition({9, 1, 9}, 4, p));
}

TEST_CASE("fast mode shortens a job by the speedup fraction") {
    ServiceTimeTable table;
    CHECK(table.duration(2.0) == 2.0);
    table.mode = ServiceMode::Fast;
    CHECK(table.duration(2.0) == doctest::Approx(1.6));
    table.speedup_fraction = 0.5;
    CHECK(table.duration(2.0) == 1.0);
}

TEST_CASE("the first speedup counts an episode and schedules a revert") {
    ServiceTimeTable table;
    SpeedupState state;
    auto policy = policy_with(3);
    policy.revert_delay = DistributionSpec::deterministic(10.0);
    RandomStream s(1, {StreamPurpose::RevertDelay, 0});

    const auto req = apply_speedup(table, state, policy, 100.0, s);
    CHECK(table.mode == ServiceMode::Fast);
    CHECK(state.change_count == 1);
    CHECK(req.new_episode);
    CHECK(req.at == 110.0);
    REQUIRE(state.pending_revert);
    CHECK(*state.pending_revert == req.ticket);
}

TEST_CASE("a re-trigger while fast restarts the timer without counting") {
    ServiceTimeTable table;
    SpeedupState state;
    auto policy = policy_with(3);
    policy.revert_delay = DistributionSpec::deterministic(10.0);
    RandomStream s(1, {StreamPurpose::RevertDelay, 0});

    const auto first = apply_speedup(table, state, policy, 100.0, s);
    const auto second = apply_speedup(table, state, policy, 104.0, s);
    CHECK(state.change_count == 1);
    CHECK_FALSE(second.new_episode);
    CHECK(second.at == 114.0);
    CHECK(second.ticket != first.ticket);

    // The superseded revert does nothing; the live one restores normal speed.
    CHECK_FALSE(revert(table, state, first.ticket));
    CHECK(table.mode == ServiceMode::Fast);
    CHECK(revert(table, state, second.ticket));
    CHECK(table.mode == ServiceMode::Normal);
    CHECK_FALSE(state.pending_revert);

    // A new episode after reverting counts again.
    apply_speedup(table, state, policy, 120.0, s);
    CHECK(state.change_count == 2);
}

TEST_CASE("a revert with no pending ticket is a no-op") {
    ServiceTimeTable table;
    SpeedupState state;
    CHECK_FALSE(revert(table, state, 7));
    CHECK(table.mode == ServiceMode::Normal);
}

TEST_CASE("policy validation") {
    CHECK_NOTHROW(ProactivePolicy{}.validate());
    CHECK_THROWS_AS(policy_with(0).validate(), ConfigError);
    auto p = ProactivePolicy{};
    p.check_mode = CheckMode::Polling;
    p.poll_interval = DistributionSpec::deterministic(0.0);
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.poll_interval = DistributionSpec::deterministic(1.0);
    CHECK_NOTHROW(p.validate());
}
