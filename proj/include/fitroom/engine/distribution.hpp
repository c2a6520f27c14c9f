#pragma once

#include "fitroom/engine/random_stream.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace fitroom::engine {

struct Deterministic {
    double value = 0.0;
};

struct Exponential {
    double rate = 1.0;  // per minute; mean = 1 / rate
};

struct Uniform {
    double low = 0.0;
    double high = 0.0;
};

struct Triangular {
    double low = 0.0;
    double mode = 0.0;
    double high = 0.0;
};

/// A non-negative duration law. Every sample consumes exactly one uniform
/// from the stream, deterministic included, so streams stay aligned when a
/// family is swapped.
class DistributionSpec {
public:
    using Family = std::variant<Deterministic, Exponential, Uniform, Triangular>;

    DistributionSpec() : family_(Deterministic{}) {}
    DistributionSpec(Family family) : family_(family) {}  // NOLINT(google-explicit-constructor)

    static DistributionSpec deterministic(double value) { return {Deterministic{value}}; }
    static DistributionSpec exponential_rate(double rate) { return {Exponential{rate}}; }
    static DistributionSpec exponential_mean(double mean) { return {Exponential{1.0 / mean}}; }
    static DistributionSpec uniform(double low, double high) { return {Uniform{low, high}}; }
    static DistributionSpec triangular(double low, double mode, double high) {
        return {Triangular{low, mode, high}};
    }

    /// Parses `deterministic(x)`, `exponential(rate)`, `exponential(mean=m)`,
    /// `uniform(a, b)` and `triangular(a, c, b)`. Throws ConfigError.
    static DistributionSpec parse(std::string_view text, const std::string& field = {});

    /// Throws ConfigError naming `field` when a parameter is out of range.
    /// Durations must be non-negative, so lower bounds are checked against 0.
    void validate(const std::string& field) const;

    double mean() const;
    bool is_deterministic() const { return std::holds_alternative<Deterministic>(family_); }
    const Family& family() const noexcept { return family_; }

    /// Maps one uniform on [0, 1) through the inverse CDF.
    double quantile(double u) const;

    std::string to_string() const;

    friend bool operator==(const DistributionSpec& a, const DistributionSpec& b);

private:
    Family family_;
};

double sample(const DistributionSpec& spec, RandomStream& stream);

}  // namespace fitroom::engine
