#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace fitroom::stats {

enum class MwMethod : std::uint8_t { Exact, NormalApproximation };

std::string_view to_string(MwMethod method);

struct MannWhitneyResult {
    double u = 0.0;  // min(U_a, U_b)
    double p = 1.0;  // two-sided
    MwMethod method = MwMethod::Exact;
    bool tie_corrected = false;
};

/// Largest smaller-sample size handled by the exact null distribution.
inline constexpr std::size_t kExactMaxSmallerSample = 8;

/// Two-sided Mann-Whitney U test. Uses the exact null distribution when the
/// smaller sample has at most eight values and there are no ties; otherwise
/// the normal approximation with continuity and tie corrections.
/// Throws std::invalid_argument if either sample is empty.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Number of label assignments giving each U = 0..n*m under the null
/// (coefficients of the Gaussian binomial [n+m choose n]). Counts are exact;
/// values beyond 2^53 lose precision in the conversion to double.
std::vector<double> u_null_counts(std::size_t n, std::size_t m);

/// Exact two-sided p for an observed min(U_a, U_b) without ties.
double mann_whitney_exact_p(double u_min, std::size_t n, std::size_t m);

/// Normal-approximation p with continuity correction. `tie_term` is
/// sum(t^3 - t) over groups of tied values.
double mann_whitney_normal_p(double u, std::size_t n, std::size_t m, double tie_term);

/// Independent brute-force check: enumerates all C(n+m, n) ways to label the
/// pooled values and counts those at least as far from n*m/2 as observed.
/// Requires n + m <= 12 and no ties; throws std::invalid_argument otherwise.
double exact_mw_oracle(std::span<const double> a, std::span<const double> b);

enum class Hypothesis : std::uint8_t { H01, H02, H03, H04 };
enum class Decision : std::uint8_t { Reject, FailToReject };

std::string_view to_string(Hypothesis h);
std::string_view to_string(Decision d);
bool parse_hypothesis(std::string_view text, Hypothesis& out);
bool parse_decision(std::string_view text, Decision& out);

struct HypothesisOutcome {
    Hypothesis label = Hypothesis::H01;
    double p_value = 1.0;
    double alpha = 0.05;
    Decision decision = Decision::FailToReject;

    friend bool operator==(const HypothesisOutcome&, const HypothesisOutcome&) = default;
};

/// Rejects the null iff p < alpha.
HypothesisOutcome decide(Hypothesis label, double p_value, double alpha = 0.05);

}  // namespace fitroom::stats
