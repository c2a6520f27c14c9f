// fitroom: run, sweep and compare fitting-room simulations.
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error.

#include "fitroom/engine/errors.hpp"
#include "fitroom/harness/config_loader.hpp"
#include "fitroom/harness/experiment.hpp"
#include "fitroom/harness/report.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace fitroom;
using namespace fitroom::harness;

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct CommonOptions {
    std::string model = "both";
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> replications;
    std::string proactive;  // "", "on", "off"
    std::string out;
    std::string format;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_proactive) {
    cmd->add_option("--model", o.model, "des, abs or both")
        ->check(CLI::IsMember({"des", "abs", "both"}))
        ->capture_default_str();
    cmd->add_option("--config", o.config_path, "scenario file (key = value)");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--replications", o.replications, "replications per cell");
    if (with_proactive) cmd->add_option("--proactive", o.proactive, "on or off")->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv or json (default: from --out extension, else csv)")
        ->check(CLI::IsMember({"csv", "json"}));
}

ScenarioConfig resolve(const CommonOptions& o) {
    ScenarioConfig config = o.config_path.empty() ? ScenarioConfig{} : load_config(o.config_path);
    if (o.seed) config.master_seed = *o.seed;
    if (o.replications) config.replications = *o.replications;
    if (o.proactive == "on") config.proactive.enabled = true;
    if (o.proactive == "off") config.proactive.enabled = false;
    config.validate();
    return config;
}

std::vector<ModelKind> models_of(const CommonOptions& o) {
    if (o.model == "des") return {ModelKind::Des};
    if (o.model == "abs") return {ModelKind::Abs};
    return {ModelKind::Des, ModelKind::Abs};
}

ReportFormat format_of(const CommonOptions& o) {
    if (!o.format.empty()) return *parse_format(o.format);
    if (o.out.size() >= 5 && o.out.ends_with(".json")) return ReportFormat::Json;
    return ReportFormat::Csv;
}

void write(const ExperimentReport& report, const CommonOptions& o) {
    const ReportFormat format = format_of(o);
    if (o.out.empty() || o.out == "-") {
        std::cout << render(report, format);
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to stdout");
    } else {
        emit_report(report, format, o.out);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fitting-room service simulator (process and agent views)"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "replications of one scenario");
    add_common(run_cmd, run_opts, true);

    CommonOptions sweep_opts;
    SweepSpec sweep_spec;
    auto* sweep_cmd = app.add_subcommand("sweep", "arrival-rate sensitivity sweep");
    add_common(sweep_cmd, sweep_opts, true);
    sweep_cmd->add_option("--levels", sweep_spec.levels, "number of load levels")->capture_default_str();
    sweep_cmd->add_option("--factor", sweep_spec.growth_factor, "arrival growth per level")->capture_default_str();

    CommonOptions compare_opts;
    CompareOptions compare_spec;
    auto* compare_cmd = app.add_subcommand("compare", "reactive (A) vs reactive+proactive (B), Mann-Whitney");
    add_common(compare_cmd, compare_opts, false);
    compare_cmd->add_flag("--independent", compare_spec.independent,
                          "draw experiment B from its own streams instead of sharing A's");
    compare_cmd->add_option("--alpha", compare_spec.alpha, "significance level")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run_cmd) {
            const auto config = resolve(run_opts);
            write(run_experiment(config, models_of(run_opts)), run_opts);
        } else if (*sweep_cmd) {
            const auto config = resolve(sweep_opts);
            write(sweep(config, sweep_spec, models_of(sweep_opts)), sweep_opts);
        } else if (*compare_cmd) {
            const auto config = resolve(compare_opts);
            if (!(compare_spec.alpha > 0.0 && compare_spec.alpha < 1.0)) {
                throw ConfigError("alpha", "must lie in (0, 1)");
            }
            write(compare_experiments(config, models_of(compare_opts), compare_spec).report, compare_opts);
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
