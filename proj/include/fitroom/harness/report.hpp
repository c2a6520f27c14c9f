#pragma once

#include "fitroom/harness/experiment.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace fitroom::harness {

enum class ReportFormat : std::uint8_t { Csv, Json };

std::optional<ReportFormat> parse_format(std::string_view text);

/// Values are written with six significant digits, '.' as the decimal mark
/// and LF line endings. CSV carries the rows under the header
/// `model,level,arrival_scale,measure,mean,sd,median,n`, followed by a
/// `hypothesis,p_value,alpha,decision` section when tests were run. JSON has
/// the same fields under "rows" and "hypotheses".
std::string to_csv(const ExperimentReport& report);
std::string to_json(const ExperimentReport& report);

/// Inverse of to_csv / to_json. Throws std::runtime_error on malformed input.
ExperimentReport parse_csv(std::string_view text);
ExperimentReport parse_json(std::string_view text);

/// Rounds every value to what the emitters write.
ExperimentReport rounded(const ExperimentReport& report);

/// Writes the report; throws IoError when the path is not writable.
void emit_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path);

std::string render(const ExperimentReport& report, ReportFormat format);

}  // namespace fitroom::harness
