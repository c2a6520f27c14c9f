#include "fitroom/harness/report.hpp"

#include "fitroom/engine/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace fitroom::harness {

namespace {

constexpr std::string_view kRowHeader = "model,level,arrival_scale,measure,mean,sd,median,n";
constexpr std::string_view kHypothesisHeader = "hypothesis,p_value,alpha,decision";

std::string six_digits(double x) {
    if (x == 0.0) return "0";  // also folds -0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

double parse_real(std::string_view text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("report: bad number '" + std::string(text) + "'");
    }
    return v;
}

double round6(double x) { return parse_real(six_digits(x)); }

template <typename Int>
Int parse_int(std::string_view text) {
    Int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("report: bad integer '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = line.find(sep);
        out.push_back(line.substr(0, pos));
        if (pos == std::string_view::npos) break;
        line.remove_prefix(pos + 1);
    }
    return out;
}

stats::Measure measure_from(std::string_view name) {
    stats::Measure m{};
    if (!stats::parse_measure(name, m)) throw std::runtime_error("report: unknown measure '" + std::string(name) + "'");
    return m;
}

stats::HypothesisOutcome outcome_from(std::string_view label, double p, double alpha, std::string_view decision) {
    stats::HypothesisOutcome h;
    if (!stats::parse_hypothesis(label, h.label)) throw std::runtime_error("report: unknown hypothesis");
    if (!stats::parse_decision(decision, h.decision)) throw std::runtime_error("report: unknown decision");
    h.p_value = p;
    h.alpha = alpha;
    return h;
}

}  // namespace

std::optional<ReportFormat> parse_format(std::string_view text) {
    if (text == "csv") return ReportFormat::Csv;
    if (text == "json") return ReportFormat::Json;
    return std::nullopt;
}

ExperimentReport rounded(const ExperimentReport& report) {
    ExperimentReport out = report;
    for (auto& row : out.rows) {
        row.arrival_scale = round6(row.arrival_scale);
        row.stats.mean = round6(row.stats.mean);
        row.stats.sd = round6(row.stats.sd);
        row.stats.median = round6(row.stats.median);
    }
    for (auto& h : out.hypotheses) {
        h.p_value = round6(h.p_value);
        h.alpha = round6(h.alpha);
    }
    return out;
}

std::string to_csv(const ExperimentReport& report) {
    std::string out;
    out += kRowHeader;
    out += '\n';
    for (const auto& row : report.rows) {
        out += row.model + ',' + std::to_string(row.level) + ',' + six_digits(row.arrival_scale) + ',' +
               std::string(stats::to_string(row.measure)) + ',' + six_digits(row.stats.mean) + ',' +
               six_digits(row.stats.sd) + ',' + six_digits(row.stats.median) + ',' + std::to_string(row.stats.n) +
               '\n';
    }
    if (!report.hypotheses.empty()) {
        out += kHypothesisHeader;
        out += '\n';
        for (const auto& h : report.hypotheses) {
            out += std::string(stats::to_string(h.label)) + ',' + six_digits(h.p_value) + ',' + six_digits(h.alpha) +
                   ',' + std::string(stats::to_string(h.decision)) + '\n';
        }
    }
    return out;
}

ExperimentReport parse_csv(std::string_view text) {
    ExperimentReport report;
    enum class Section { None, Rows, Hypotheses } section = Section::None;
    for (std::string_view line : split(text, '\n')) {
        if (line.empty()) continue;
        if (line == kRowHeader) {
            section = Section::Rows;
            continue;
        }
        if (line == kHypothesisHeader) {
            section = Section::Hypotheses;
            continue;
        }
        const auto f = split(line, ',');
        if (section == Section::Rows && f.size() == 8) {
            ReportRow row;
            row.model = std::string(f[0]);
            row.level = parse_int<int>(f[1]);
            row.arrival_scale = parse_real(f[2]);
            row.measure = measure_from(f[3]);
            row.stats.mean = parse_real(f[4]);
            row.stats.sd = parse_real(f[5]);
            row.stats.median = parse_real(f[6]);
            row.stats.n = parse_int<std::size_t>(f[7]);
            report.rows.push_back(std::move(row));
        } else if (section == Section::Hypotheses && f.size() == 4) {
            report.hypotheses.push_back(outcome_from(f[0], parse_real(f[1]), parse_real(f[2]), f[3]));
        } else {
            throw std::runtime_error("report: malformed CSV line '" + std::string(line) + "'");
        }
    }
    return report;
}

std::string to_json(const ExperimentReport& report) {
    using nlohmann::ordered_json;
    ordered_json root;
    root["rows"] = ordered_json::array();
    for (const auto& row : report.rows) {
        root["rows"].push_back(ordered_json{
            {"model", row.model},
            {"level", row.level},
            {"arrival_scale", round6(row.arrival_scale)},
            {"measure", stats::to_string(row.measure)},
            {"mean", round6(row.stats.mean)},
            {"sd", round6(row.stats.sd)},
            {"median", round6(row.stats.median)},
            {"n", row.stats.n},
        });
    }
    root["hypotheses"] = ordered_json::array();
    for (const auto& h : report.hypotheses) {
        root["hypotheses"].push_back(ordered_json{
            {"hypothesis", stats::to_string(h.label)},
            {"p_value", round6(h.p_value)},
            {"alpha", round6(h.alpha)},
            {"decision", stats::to_string(h.decision)},
        });
    }
    return root.dump(2) + '\n';
}

ExperimentReport parse_json(std::string_view text) {
    ExperimentReport report;
    try {
        const auto root = nlohmann::json::parse(text);
        for (const auto& r : root.at("rows")) {
            ReportRow row;
            row.model = r.at("model").get<std::string>();
            row.level = r.at("level").get<int>();
            row.arrival_scale = r.at("arrival_scale").get<double>();
            row.measure = measure_from(r.at("measure").get<std::string>());
            row.stats.mean = r.at("mean").get<double>();
            row.stats.sd = r.at("sd").get<double>();
            row.stats.median = r.at("median").get<double>();
            row.stats.n = r.at("n").get<std::size_t>();
            report.rows.push_back(std::move(row));
        }
        for (const auto& h : root.at("hypotheses")) {
            report.hypotheses.push_back(outcome_from(h.at("hypothesis").get<std::string>(),
                                                     h.at("p_value").get<double>(), h.at("alpha").get<double>(),
                                                     h.at("decision").get<std::string>()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("report: malformed JSON: ") + e.what());
    }
    return report;
}

std::string render(const ExperimentReport& report, ReportFormat format) {
    return format == ReportFormat::Csv ? to_csv(report) : to_json(report);
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path) {
    const std::string body = render(report, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace fitroom::harness
