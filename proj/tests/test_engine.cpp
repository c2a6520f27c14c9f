#include "fitroom/engine/arrival.hpp"
#include "fitroom/engine/distribution.hpp"
#include "fitroom/engine/errors.hpp"
#include "fitroom/engine/event_calendar.hpp"
#include "fitroom/engine/random_stream.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace fitroom;
using namespace fitroom::engine;

TEST_CASE("calendar pops a single event and moves the clock") {
    EventCalendar cal;
    cal.schedule(5.0, 7, 42);
    auto e = cal.advance();
    REQUIRE(e);
    CHECK(e->time == 5.0);
    CHECK(e->kind == 7);
    CHECK(e->target == 42);
    CHECK(cal.now() == 5.0);
    CHECK_FALSE(cal.advance());
}

TEST_CASE("simultaneous events run in insertion order") {
    EventCalendar cal;
    cal.schedule(5.0, 1);
    cal.schedule(5.0, 2);
    cal.schedule(5.0, 3);
    CHECK(cal.advance()->kind == 1);
    CHECK(cal.advance()->kind == 2);
    CHECK(cal.advance()->kind == 3);
}

TEST_CASE("scheduling into the past is a model error") {
    EventCalendar cal;
    cal.schedule(4.0, 1);
    cal.advance();
    CHECK_THROWS_AS(cal.schedule(3.0, 1), ModelError);
    CHECK_NOTHROW(cal.schedule(4.0, 1));
}

TEST_CASE("advance extracts the minimum") {
    EventCalendar cal;
    cal.schedule(7.0, 2);
    cal.schedule(2.0, 1);
    auto e = cal.advance();
    CHECK(e->time == 2.0);
    CHECK(cal.now() == 2.0);
    CHECK(cal.size() == 1);
}

TEST_CASE("events past the horizon are discarded and the run ends") {
    EventCalendar cal(480.0);
    cal.schedule(480.0, 1);
    cal.schedule(480.5, 2);
    cal.schedule(900.0, 3);
    auto at_close = cal.advance();
    REQUIRE(at_close);
    CHECK(at_close->kind == 1);
    CHECK_FALSE(cal.advance());
    CHECK(cal.empty());
    CHECK(cal.now() == 480.0);
}

TEST_CASE("popped times never decrease under random scheduling") {
    RandomStream rng(3, {StreamPurpose::Polling, 0});
    EventCalendar cal(1e9);
    for (int i = 0; i < 200; ++i) cal.schedule(rng.uniform01() * 100.0, 0);
    double last = 0.0;
    int popped = 0;
    while (auto e = cal.advance()) {
        CHECK(e->time >= last);
        last = e->time;
        if (++popped < 1000) cal.schedule(last + rng.uniform01() * 10.0, 0);
    }
}

TEST_CASE("streams are reproducible and distinct") {
    RandomStream a(42, {StreamPurpose::Arrivals, 3});
    RandomStream b(42, {StreamPurpose::Arrivals, 3});
    RandomStream c(42, {StreamPurpose::Arrivals, 4});
    RandomStream d(42, {StreamPurpose::Job1, 3});
    bool differs_c = false;
    bool differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differs_c |= x != c.next_u64();
        differs_d |= x != d.next_u64();
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("disjoint streams are uncorrelated") {
    constexpr int n = 10000;
    const std::vector<StreamId> ids{{StreamPurpose::Arrivals, 0}, {StreamPurpose::Job1, 0},
                                    {StreamPurpose::Arrivals, 1}, {StreamPurpose::Patience, 7}};
    std::vector<std::vector<double>> xs;
    for (const auto& id : ids) {
        RandomStream s(2024, id);
        std::vector<double> v(n);
        for (auto& x : v) x = s.uniform01();
        xs.push_back(std::move(v));
    }
    auto corr = [](const std::vector<double>& x, const std::vector<double>& y) {
        double mx = 0, my = 0;
        for (int i = 0; i < n; ++i) mx += x[i], my += y[i];
        mx /= n;
        my /= n;
        double sxy = 0, sxx = 0, syy = 0;
        for (int i = 0; i < n; ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        return sxy / std::sqrt(sxx * syy);
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) CHECK(std::abs(corr(xs[i], xs[j])) < 0.05);
    }
}

TEST_CASE("deterministic and degenerate uniform samples are constant") {
    RandomStream s(1, {StreamPurpose::Job1, 0});
    const auto det = DistributionSpec::deterministic(3.5);
    const auto uni = DistributionSpec::uniform(2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample(det, s) == 3.5);
        CHECK(sample(uni, s) == 2.0);
    }
}

TEST_CASE("exponential sample mean matches 1/rate") {
    RandomStream s(11, {StreamPurpose::Job2, 0});
    const auto spec = DistributionSpec::exponential_rate(0.5);
    double sum = 0.0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = sample(spec, s);
        CHECK(x >= 0.0);
        sum += x;
    }
    CHECK(sum / n == doctest::Approx(2.0).epsilon(0.025));  // +-0.05
}

TEST_CASE("triangular samples stay in range with the right mean") {
    RandomStream s(12, {StreamPurpose::Fitting, 0});
    const auto spec = DistributionSpec::triangular(1.0, 2.0, 6.0);
    double sum = 0.0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = sample(spec, s);
        REQUIRE(x >= 1.0);
        REQUIRE(x <= 6.0);
        sum += x;
    }
    // Mean 3, sd sqrt((1+4+36-2-6-12)/18) ~ 1.08; 5 standard errors ~ 0.017.
    CHECK(std::abs(sum / n - 3.0) < 0.02);
    CHECK(spec.quantile(0.0) == 1.0);
    CHECK(spec.quantile(0.2) == doctest::Approx(2.0));  // mode at CDF 0.2
}

TEST_CASE("distribution parsing and validation") {
    CHECK(DistributionSpec::parse("triangular(1, 2, 3)") == DistributionSpec::triangular(1, 2, 3));
    CHECK(DistributionSpec::parse(" exponential(mean=25) ").mean() == doctest::Approx(25.0));
    CHECK(DistributionSpec::parse("exponential(0.5)") == DistributionSpec::exponential_rate(0.5));
    CHECK(DistributionSpec::parse("deterministic(3.5)") == DistributionSpec::deterministic(3.5));
    CHECK(DistributionSpec::parse("uniform(0.3,0.7)") == DistributionSpec::uniform(0.3, 0.7));

    CHECK_THROWS_AS(DistributionSpec::parse("uniform(3, 2)", "x"), ConfigError);
    CHECK_THROWS_AS(DistributionSpec::parse("triangular(1, 4, 3)", "x"), ConfigError);
    CHECK_THROWS_AS(DistributionSpec::parse("exponential(0)", "x"), ConfigError);
    CHECK_THROWS_AS(DistributionSpec::parse("exponential(-1)", "x"), ConfigError);
    CHECK_THROWS_AS(DistributionSpec::parse("gamma(1, 2)", "x"), ConfigError);
    CHECK_THROWS_AS(DistributionSpec::parse("deterministic(inf)", "x"), ConfigError);
    CHECK_THROWS_AS(DistributionSpec::parse("triangular(1, 2)", "x"), ConfigError);
    try {
        DistributionSpec::parse("uniform(3, 2)", "service.job1");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "service.job1");
    }

    for (const auto& spec : {DistributionSpec::triangular(0.1, 0.35, 0.6), DistributionSpec::exponential_mean(10),
                             DistributionSpec::uniform(0.3, 0.7), DistributionSpec::deterministic(2)}) {
        CHECK(DistributionSpec::parse(spec.to_string()) == spec);
    }
}

namespace {

ArrivalProfile flat(double per_hour) {
    ArrivalProfile p;
    p.hourly_rates.fill(per_hour);
    return p;
}

// Arrival times of one day.
std::vector<double> day(const ArrivalProfile& profile, RandomStream& s) {
    std::vector<double> out;
    double t = 0.0;
    while (auto next = next_arrival(profile, t, s)) {
        out.push_back(*next);
        t = *next;
    }
    return out;
}

}  // namespace

TEST_CASE("constant 60/hr gives mean inter-arrival of one minute") {
    const auto profile = flat(60.0);
    double sum = 0.0;
    long count = 0;
    for (std::uint64_t rep = 0; count < 100000; ++rep) {
        RandomStream s(5, {StreamPurpose::Arrivals, rep});
        double prev = 0.0;
        for (double t : day(profile, s)) {
            sum += t - prev;
            prev = t;
            ++count;
        }
    }
    CHECK(std::abs(sum / static_cast<double>(count) - 1.0) < 0.02);
}

TEST_CASE("a zero-rate hour never produces arrivals") {
    auto profile = flat(40.0);
    profile.hourly_rates[1] = 0.0;
    long before = 0, after = 0;
    for (std::uint64_t rep = 0; rep < 1000; ++rep) {
        RandomStream s(6, {StreamPurpose::Arrivals, rep});
        for (double t : day(profile, s)) {
            CHECK_FALSE((t >= 60.0 && t < 120.0));
            (t < 60.0 ? before : after) += 1;
        }
    }
    CHECK(before > 0);
    CHECK(after > 0);
}

TEST_CASE("scaling the profile scales expected daily arrivals") {
    ArrivalProfile base{{24.5, 36, 44, 54, 54, 44, 36, 24.5}, 1.0};
    ArrivalProfile scaled = base;
    scaled.scale = 1.3;
    CHECK(scaled.expected_daily_arrivals() == doctest::Approx(1.3 * base.expected_daily_arrivals()));

    constexpr int reps = 1000;
    double total = 0.0;
    for (std::uint64_t rep = 0; rep < reps; ++rep) {
        RandomStream s(7, {StreamPurpose::Arrivals, rep});
        total += static_cast<double>(day(scaled, s).size());
    }
    const double expected = scaled.expected_daily_arrivals();
    const double three_sigma = 3.0 * std::sqrt(expected / reps);  // Poisson daily count
    CHECK(std::abs(total / reps - expected) < three_sigma);
}

TEST_CASE("arrival profile validation") {
    auto p = flat(10.0);
    CHECK_NOTHROW(p.validate());
    p.scale = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.scale = 1.0;
    p.hourly_rates[3] = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("an all-zero profile produces no arrivals") {
    RandomStream s(8, {StreamPurpose::Arrivals, 0});
    CHECK_FALSE(next_arrival(flat(0.0), 0.0, s));
}
