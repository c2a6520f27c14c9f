#pragma once

#include <cstddef>
#include <span>

namespace fitroom::stats {

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation, n - 1 divisor; 0 when n == 1
    double median = 0.0;

    friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

/// Throws std::invalid_argument on an empty sample.
SummaryStats summarize(std::span<const double> sample);

/// Standard error of the mean, sd / sqrt(n).
double standard_error(const SummaryStats& s);

}  // namespace fitroom::stats
