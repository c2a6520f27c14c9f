#include "fitroom/engine/distribution.hpp"

#include "fitroom/engine/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace fitroom::engine {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text, const std::string& field) {
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(field, "expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

bool finite(std::initializer_list<double> xs) {
    for (double x : xs) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

bool operator==(const DistributionSpec& a, const DistributionSpec& b) {
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            const auto* rhs = std::get_if<T>(&b.family_);
            if (rhs == nullptr) return false;
            if constexpr (std::is_same_v<T, Deterministic>) return lhs.value == rhs->value;
            if constexpr (std::is_same_v<T, Exponential>) return lhs.rate == rhs->rate;
            if constexpr (std::is_same_v<T, Uniform>) return lhs.low == rhs->low && lhs.high == rhs->high;
            if constexpr (std::is_same_v<T, Triangular>)
                return lhs.low == rhs->low && lhs.mode == rhs->mode && lhs.high == rhs->high;
        },
        a.family_);
}

DistributionSpec DistributionSpec::parse(std::string_view text, const std::string& field) {
    text = trim(text);
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')') {
        throw ConfigError(field, "expected family(params...), got '" + std::string(text) + "'");
    }
    const std::string_view name = trim(text.substr(0, open));
    std::string_view inner = text.substr(open + 1, text.size() - open - 2);

    std::vector<std::string_view> args;
    while (true) {
        const auto comma = inner.find(',');
        args.push_back(trim(inner.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        inner.remove_prefix(comma + 1);
    }
    if (args.size() == 1 && args.front().empty()) args.clear();

    auto expect = [&](std::size_t n) {
        if (args.size() != n) {
            throw ConfigError(field, std::string(name) + " takes " + std::to_string(n) + " parameter(s)");
        }
    };

    DistributionSpec spec;
    if (name == "deterministic") {
        expect(1);
        spec = deterministic(parse_number(args[0], field));
    } else if (name == "exponential") {
        expect(1);
        std::string_view arg = args[0];
        if (arg.starts_with("mean")) {
            arg.remove_prefix(4);
            arg = trim(arg);
            if (arg.empty() || arg.front() != '=') throw ConfigError(field, "expected mean=<minutes>");
            arg.remove_prefix(1);
            const double m = parse_number(arg, field);
            if (!(m > 0.0)) throw ConfigError(field, "exponential mean must be > 0");
            spec = exponential_mean(m);
        } else {
            if (arg.starts_with("rate")) {
                arg = trim(arg.substr(4));
                if (arg.empty() || arg.front() != '=') throw ConfigError(field, "expected rate=<per minute>");
                arg.remove_prefix(1);
            }
            spec = exponential_rate(parse_number(arg, field));
        }
    } else if (name == "uniform") {
        expect(2);
        spec = uniform(parse_number(args[0], field), parse_number(args[1], field));
    } else if (name == "triangular") {
        expect(3);
        spec = triangular(parse_number(args[0], field), parse_number(args[1], field),
                          parse_number(args[2], field));
    } else {
        throw ConfigError(field, "unknown distribution family '" + std::string(name) + "'");
    }
    spec.validate(field);
    return spec;
}

void DistributionSpec::validate(const std::string& field) const {
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Deterministic>) {
                if (!finite({d.value}) || d.value < 0.0)
                    throw ConfigError(field, "deterministic value must be finite and >= 0");
            } else if constexpr (std::is_same_v<T, Exponential>) {
                if (!finite({d.rate}) || !(d.rate > 0.0))
                    throw ConfigError(field, "exponential rate must be finite and > 0");
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (!finite({d.low, d.high}) || d.low < 0.0 || d.low > d.high)
                    throw ConfigError(field, "uniform requires 0 <= low <= high");
            } else {
                if (!finite({d.low, d.mode, d.high}) || d.low < 0.0 || d.low > d.mode || d.mode > d.high)
                    throw ConfigError(field, "triangular requires 0 <= low <= mode <= high");
            }
        },
        family_);
}

double DistributionSpec::mean() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Deterministic>) return d.value;
            if constexpr (std::is_same_v<T, Exponential>) return 1.0 / d.rate;
            if constexpr (std::is_same_v<T, Uniform>) return 0.5 * (d.low + d.high);
            if constexpr (std::is_same_v<T, Triangular>) return (d.low + d.mode + d.high) / 3.0;
        },
        family_);
}

double DistributionSpec::quantile(double u) const {
    return std::visit(
        [u](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Deterministic>) {
                return d.value;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return -std::log1p(-u) / d.rate;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return d.low + (d.high - d.low) * u;
            } else {
                const double width = d.high - d.low;
                if (width == 0.0) return d.low;
                const double split = (d.mode - d.low) / width;
                if (u < split) return d.low + std::sqrt(u * width * (d.mode - d.low));
                return d.high - std::sqrt((1.0 - u) * width * (d.high - d.mode));
            }
        },
        family_);
}

std::string DistributionSpec::to_string() const {
    return std::visit(
        [](const auto& d) -> std::string {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Deterministic>) return "deterministic(" + fmt(d.value) + ")";
            if constexpr (std::is_same_v<T, Exponential>) return "exponential(" + fmt(d.rate) + ")";
            if constexpr (std::is_same_v<T, Uniform>) return "uniform(" + fmt(d.low) + ", " + fmt(d.high) + ")";
            if constexpr (std::is_same_v<T, Triangular>)
                return "triangular(" + fmt(d.low) + ", " + fmt(d.mode) + ", " + fmt(d.high) + ")";
        },
        family_);
}

double sample(const DistributionSpec& spec, RandomStream& stream) {
    return spec.quantile(stream.uniform01());
}

}  // namespace fitroom::engine
