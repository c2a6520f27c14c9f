#include "fitroom/engine/errors.hpp"
#include "fitroom/harness/config_loader.hpp"
#include "fitroom/harness/experiment.hpp"
#include "fitroom/harness/report.hpp"
#include "support.hpp"

#include <doctest.h>

#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fitroom;
using namespace fitroom::harness;

namespace {

std::string field_of(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ScenarioConfig small_config(int reps) {
    ScenarioConfig c;
    c.replications = reps;
    return c;
}

constexpr std::array<ModelKind, 2> kBoth{ModelKind::Des, ModelKind::Abs};

}  // namespace

TEST_CASE("a file that sets only the seed gives the default scenario") {
    const auto c = parse_config("seed = 42\n");
    ScenarioConfig expected;
    expected.master_seed = 42;
    CHECK(to_config_text(c) == to_config_text(expected));
}

TEST_CASE("config errors name the field") {
    CHECK(field_of("cubicles = 0") == "cubicles");
    CHECK(field_of("arrival.rates = [1, 2, 3, 4, 5, 6, 7]") == "arrival.rates");
    CHECK(field_of("staff = 2") == "staff");
    CHECK(field_of("service.job1 = uniform(2, 1)") == "service.job1");
    CHECK(field_of("help.probability = 1.5") == "help.probability");
    CHECK(field_of("proactive.check = sometimes") == "proactive.check");
    CHECK(field_of("bogus = 1") == "bogus");
    CHECK(field_of("seed = 1\nseed = 2") == "seed");
    CHECK(field_of("horizon = 600") == "horizon");
    CHECK(field_of("# comment only\n\nseed = 3 # trailing\n").empty());
}

TEST_CASE("config text round trips") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        auto c = testing::random_config(rng);
        c.replications = 1 + static_cast<int>(rng() % 200);
        const auto text = to_config_text(c);
        const auto back = parse_config(text);
        CHECK(to_config_text(back) == text);
    }
}

TEST_CASE("loading a missing file is an I/O error") {
    CHECK_THROWS_AS(load_config("/nonexistent/dir/fitroom.conf"), IoError);
}

TEST_CASE("model names") {
    CHECK(parse_model("des") == ModelKind::Des);
    CHECK(parse_model("abs") == ModelKind::Abs);
    CHECK_FALSE(parse_model("both"));
}

TEST_CASE("replications are deterministic regardless of worker count") {
    const auto c = small_config(12);
    const auto a = run_replications(c, ModelKind::Des, 1);
    const auto b = run_replications(c, ModelKind::Des, 4);
    REQUIRE(a.size() == 12);
    CHECK(a == b);
    CHECK_FALSE(a[0] == a[1]);
}

TEST_CASE("a single replication gives a single result") {
    CHECK(run_replications(small_config(1), ModelKind::Abs).size() == 1);
}

TEST_CASE("des and abs replications agree on a degenerate scenario") {
    std::mt19937_64 rng(31);
    auto c = testing::random_deterministic_config(rng);
    c.p_help = 0.0;
    c.replications = 8;
    CHECK(run_replications(c, ModelKind::Des) == run_replications(c, ModelKind::Abs));
}

TEST_CASE("sweep scales grow by the factor") {
    SweepSpec spec;
    CHECK(spec.scale(1) == 1.0);
    CHECK(spec.scale(2) == doctest::Approx(1.3));
    CHECK(spec.scale(3) == doctest::Approx(1.69));
    CHECK(spec.scale(4) == doctest::Approx(2.197));
    CHECK(spec.scale(5) == doctest::Approx(2.8561));
    spec.levels = 0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("a one-level sweep equals a plain experiment") {
    const auto c = small_config(5);
    const std::array<ModelKind, 1> des{ModelKind::Des};
    SweepSpec spec;
    spec.levels = 1;
    CHECK(sweep(c, spec, des) == run_experiment(c, des));
}

TEST_CASE("sweep report shape and emitters") {
    const auto c = small_config(4);
    const auto report = sweep(c, SweepSpec{}, kBoth);
    CHECK(report.rows.size() == 60);

    const auto csv = to_csv(report);
    CHECK(csv.rfind("model,level,arrival_scale,measure,mean,sd,median,n\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 61);
    CHECK(to_csv(report) == csv);
    CHECK(parse_csv(csv) == rounded(report));
    CHECK(to_csv(parse_csv(csv)) == csv);

    const auto json = to_json(report);
    CHECK(to_json(report) == json);
    CHECK(parse_json(json) == rounded(report));
    CHECK(to_json(parse_json(json)) == json);
}

TEST_CASE("emit writes identical files and reports unwritable paths") {
    const auto c = small_config(3);
    const std::array<ModelKind, 1> des{ModelKind::Des};
    const auto report = run_experiment(c, des);
    const auto dir = std::filesystem::temp_directory_path() / "fitroom_harness_test";
    std::filesystem::create_directories(dir);
    emit_report(report, ReportFormat::Csv, dir / "a.csv");
    emit_report(report, ReportFormat::Csv, dir / "b.csv");
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.csv") == render(report, ReportFormat::Csv));
    CHECK_THROWS_AS(emit_report(report, ReportFormat::Json, dir / "missing" / "x.json"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("six significant digits") {
    ExperimentReport r;
    stats::RunMetrics m;
    m.mean_wait = 1.23456789;
    m.staff_util = 0.0;
    const std::array<stats::RunMetrics, 1> runs{m};
    add_rows(r, "des", 1, 1.0, runs);
    const auto csv = to_csv(r);
    CHECK(csv.find("des,1,1,mean_wait,1.23457,0,1.23457,1\n") != std::string::npos);
}

TEST_CASE("a zero speedup makes the two experiments indistinguishable") {
    auto c = small_config(10);
    c.speedup_fraction = 0.0;
    const auto cmp = compare_experiments(c, kBoth);
    REQUIRE(cmp.models.size() == 2);
    for (const auto& m : cmp.models) {
        CHECK(m.wait_test.p == 1.0);
        CHECK(m.util_test.p == 1.0);
        REQUIRE(m.reactive.size() == m.proactive.size());
        for (std::size_t i = 0; i < m.reactive.size(); ++i) {
            CHECK(m.reactive[i].mean_wait == m.proactive[i].mean_wait);
            CHECK(m.reactive[i].staff_busy_minutes == m.proactive[i].staff_busy_minutes);
        }
    }
    REQUIRE(cmp.report.hypotheses.size() == 4);
    CHECK(cmp.report.hypotheses[0].label == stats::Hypothesis::H01);
    CHECK(cmp.report.hypotheses[3].label == stats::Hypothesis::H04);
    for (const auto& h : cmp.report.hypotheses) CHECK(h.decision == stats::Decision::FailToReject);
    CHECK(cmp.report.rows.size() == 24);

    const auto csv = to_csv(cmp.report);
    CHECK(csv.find("hypothesis,p_value,alpha,decision\n") != std::string::npos);
    CHECK(csv.find("H01,1,0.05,fail-to-reject\n") != std::string::npos);
    CHECK(parse_csv(csv) == rounded(cmp.report));
}

TEST_CASE("independent comparison draws different streams for B") {
    auto c = small_config(4);
    c.speedup_fraction = 0.0;
    const std::array<ModelKind, 1> des{ModelKind::Des};
    CompareOptions opt;
    opt.independent = true;
    const auto cmp = compare_experiments(c, des, opt);
    CHECK_FALSE(cmp.models[0].reactive == cmp.models[0].proactive);
}

TEST_CASE("the shipped config spells out the defaults") {
    const auto c = load_config(std::filesystem::path(FITROOM_SOURCE_DIR) / "config" / "default.conf");
    CHECK(to_config_text(c) == to_config_text(ScenarioConfig{}));
}
