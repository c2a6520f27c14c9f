#pragma once

#include "fitroom/model/trace.hpp"
#include "fitroom/stats/run_metrics.hpp"

#include <vector>

namespace fitroom::model {

struct RunResult {
    stats::RunMetrics metrics;
    std::vector<TraceRecord> trace;  // empty unless RunOptions::keep_trace
};

}  // namespace fitroom::model
