#include "fitroom/stats/summary.hpp"

#include "fitroom/stats/run_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fitroom::stats {

SummaryStats summarize(std::span<const double> sample) {
    if (sample.empty()) throw std::invalid_argument("summarize: empty sample");

    SummaryStats s;
    s.n = sample.size();
    double sum = 0.0;
    for (double x : sample) sum += x;
    s.mean = sum / static_cast<double>(s.n);

    if (s.n > 1) {
        double ss = 0.0;
        for (double x : sample) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    }

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = s.n / 2;
    s.median = s.n % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    return s;
}

double standard_error(const SummaryStats& s) {
    return s.n == 0 ? 0.0 : s.sd / std::sqrt(static_cast<double>(s.n));
}

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::MeanWait: return "mean_wait";
        case Measure::StaffUtil: return "staff_util";
        case Measure::CubicleUtil: return "cubicle_util";
        case Measure::Served: return "served";
        case Measure::NotServed: return "not_served";
        case Measure::ServiceTimeChanges: return "service_time_changes";
    }
    return "?";
}

bool parse_measure(std::string_view name, Measure& out) {
    for (Measure m : kAllMeasures) {
        if (to_string(m) == name) {
            out = m;
            return true;
        }
    }
    return false;
}

double value_of(const RunMetrics& metrics, Measure m) {
    switch (m) {
        case Measure::MeanWait: return metrics.mean_wait;
        case Measure::StaffUtil: return metrics.staff_util;
        case Measure::CubicleUtil: return metrics.cubicle_util;
        case Measure::Served: return static_cast<double>(metrics.served);
        case Measure::NotServed: return static_cast<double>(metrics.not_served);
        case Measure::ServiceTimeChanges: return static_cast<double>(metrics.service_time_changes);
    }
    return 0.0;
}

}  // namespace fitroom::stats
