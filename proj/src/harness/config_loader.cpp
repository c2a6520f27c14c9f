#include "fitroom/harness/config_loader.hpp"

#include "fitroom/engine/errors.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace fitroom::harness {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double to_real(std::string_view text, const std::string& key) {
    text = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
    }
    return v;
}

template <typename Int>
Int to_integer(std::string_view text, const std::string& key) {
    text = trim(text);
    Int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
    }
    return v;
}

bool to_bool(std::string_view text, const std::string& key) {
    text = trim(text);
    if (text == "true" || text == "on" || text == "yes") return true;
    if (text == "false" || text == "off" || text == "no") return false;
    throw ConfigError(key, "expected true/false, got '" + std::string(text) + "'");
}

std::vector<double> to_list(std::string_view text, const std::string& key) {
    text = trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw ConfigError(key, "expected a list like [1, 2, 3]");
    }
    text = trim(text.substr(1, text.size() - 2));
    std::vector<double> out;
    if (text.empty()) return out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(to_real(text.substr(0, comma), key));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::string number(double x) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << x;
    return os.str();
}

using Setter = std::function<void(ScenarioConfig&, std::string_view, const std::string&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    using engine::DistributionSpec;
    static const std::map<std::string, Setter, std::less<>> table{
        {"seed", [](auto& c, auto v, auto& k) { c.master_seed = to_integer<std::uint64_t>(v, k); }},
        {"replications", [](auto& c, auto v, auto& k) { c.replications = to_integer<int>(v, k); }},
        {"horizon", [](auto& c, auto v, auto& k) { c.horizon = to_real(v, k); }},
        {"cubicles", [](auto& c, auto v, auto& k) { c.cubicles = to_integer<int>(v, k); }},
        {"staff", [](auto& c, auto v, auto& k) { c.staff_count = to_integer<int>(v, k); }},
        {"arrival.rates",
         [](auto& c, auto v, auto& k) {
             const auto rates = to_list(v, k);
             if (rates.size() != c.arrivals.hourly_rates.size()) {
                 throw ConfigError(k, "exactly 8 hourly rates required, got " + std::to_string(rates.size()));
             }
             std::copy(rates.begin(), rates.end(), c.arrivals.hourly_rates.begin());
         }},
        {"arrival.scale", [](auto& c, auto v, auto& k) { c.arrivals.scale = to_real(v, k); }},
        {"service.job1", [](auto& c, auto v, auto& k) { c.service[0] = DistributionSpec::parse(v, k); }},
        {"service.job2", [](auto& c, auto v, auto& k) { c.service[1] = DistributionSpec::parse(v, k); }},
        {"service.job3", [](auto& c, auto v, auto& k) { c.service[2] = DistributionSpec::parse(v, k); }},
        {"service.fitting", [](auto& c, auto v, auto& k) { c.fitting = DistributionSpec::parse(v, k); }},
        {"help.probability", [](auto& c, auto v, auto& k) { c.p_help = to_real(v, k); }},
        {"help.request_fraction",
         [](auto& c, auto v, auto& k) { c.help_fraction = DistributionSpec::parse(v, k); }},
        {"patience",
         [](auto& c, auto v, auto& k) {
             if (trim(v) == "infinite") {
                 c.patience.reset();
             } else {
                 c.patience = DistributionSpec::parse(v, k);
             }
         }},
        {"proactive.enabled", [](auto& c, auto v, auto& k) { c.proactive.enabled = to_bool(v, k); }},
        {"proactive.threshold",
         [](auto& c, auto v, auto& k) {
             const int t = to_integer<int>(v, k);
             c.proactive.threshold = {t, t, t};
         }},
        {"proactive.threshold.entry",
         [](auto& c, auto v, auto& k) { c.proactive.threshold.entry = to_integer<int>(v, k); }},
        {"proactive.threshold.help",
         [](auto& c, auto v, auto& k) { c.proactive.threshold.help = to_integer<int>(v, k); }},
        {"proactive.threshold.return",
         [](auto& c, auto v, auto& k) { c.proactive.threshold.ret = to_integer<int>(v, k); }},
        {"proactive.speedup", [](auto& c, auto v, auto& k) { c.speedup_fraction = to_real(v, k); }},
        {"proactive.revert_delay",
         [](auto& c, auto v, auto& k) { c.proactive.revert_delay = DistributionSpec::parse(v, k); }},
        {"proactive.check",
         [](auto& c, auto v, auto& k) {
             v = trim(v);
             if (v == "event") {
                 c.proactive.check_mode = proactive::CheckMode::EventDriven;
             } else if (v == "polling") {
                 c.proactive.check_mode = proactive::CheckMode::Polling;
             } else {
                 throw ConfigError(k, "expected 'event' or 'polling'");
             }
         }},
        {"proactive.poll_interval",
         [](auto& c, auto v, auto& k) { c.proactive.poll_interval = DistributionSpec::parse(v, k); }},
        {"metrics.wait_estimator",
         [](auto& c, auto v, auto& k) {
             v = trim(v);
             if (v == "served") {
                 c.wait_estimator = WaitEstimator::ServedOnly;
             } else if (v == "all") {
                 c.wait_estimator = WaitEstimator::AllCustomers;
             } else {
                 throw ConfigError(k, "expected 'served' or 'all'");
             }
         }},
    };
    return table;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig config;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto setter = setters().find(key);
        if (setter == setters().end()) throw ConfigError(key, "unknown key");
        if (!seen.insert(key).second) throw ConfigError(key, "set more than once");
        if (value.empty()) throw ConfigError(key, "missing value");
        setter->second(config, value, key);
    }
    config.validate();
    return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string to_config_text(const ScenarioConfig& c) {
    std::ostringstream os;
    os << "seed = " << c.master_seed << '\n';
    os << "replications = " << c.replications << '\n';
    os << "arrival.rates = [";
    for (std::size_t h = 0; h < c.arrivals.hourly_rates.size(); ++h) {
        os << (h ? ", " : "") << number(c.arrivals.hourly_rates[h]);
    }
    os << "]\n";
    os << "arrival.scale = " << number(c.arrivals.scale) << '\n';
    os << "cubicles = " << c.cubicles << '\n';
    os << "staff = " << c.staff_count << '\n';
    os << "service.job1 = " << c.service[0].to_string() << '\n';
    os << "service.job2 = " << c.service[1].to_string() << '\n';
    os << "service.job3 = " << c.service[2].to_string() << '\n';
    os << "service.fitting = " << c.fitting.to_string() << '\n';
    os << "help.probability = " << number(c.p_help) << '\n';
    os << "help.request_fraction = " << c.help_fraction.to_string() << '\n';
    os << "patience = " << (c.patience ? c.patience->to_string() : "infinite") << '\n';
    os << "proactive.enabled = " << (c.proactive.enabled ? "true" : "false") << '\n';
    os << "proactive.threshold.entry = " << c.proactive.threshold.entry << '\n';
    os << "proactive.threshold.help = " << c.proactive.threshold.help << '\n';
    os << "proactive.threshold.return = " << c.proactive.threshold.ret << '\n';
    os << "proactive.speedup = " << number(c.speedup_fraction) << '\n';
    os << "proactive.revert_delay = " << c.proactive.revert_delay.to_string() << '\n';
    os << "proactive.check = "
       << (c.proactive.check_mode == proactive::CheckMode::EventDriven ? "event" : "polling") << '\n';
    os << "proactive.poll_interval = " << c.proactive.poll_interval.to_string() << '\n';
    os << "metrics.wait_estimator = " << (c.wait_estimator == WaitEstimator::ServedOnly ? "served" : "all")
       << '\n';
    return os.str();
}

}  // namespace fitroom::harness
