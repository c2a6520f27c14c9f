#include "fitroom/stats/mann_whitney.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fitroom::stats {

namespace {

__extension__ typedef __int128 Wide;

struct Ranking {
    double rank_sum_a = 0.0;
    double tie_term = 0.0;  // sum of t^3 - t over tie groups
};

Ranking rank_pooled(std::span<const double> a, std::span<const double> b) {
    struct Item {
        double value;
        bool from_a;
    };
    std::vector<Item> pooled;
    pooled.reserve(a.size() + b.size());
    for (double x : a) pooled.push_back({x, true});
    for (double x : b) pooled.push_back({x, false});
    std::sort(pooled.begin(), pooled.end(), [](const Item& l, const Item& r) { return l.value < r.value; });

    Ranking out;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j + 1 < pooled.size() && pooled[j + 1].value == pooled[i].value) ++j;
        const double t = static_cast<double>(j - i + 1);
        const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (pooled[k].from_a) out.rank_sum_a += midrank;
        }
        out.tie_term += t * t * t - t;
        i = j + 1;
    }
    return out;
}

// Coefficients of the Gaussian binomial [n+m choose k]_q, k = min(n, m),
// built as prod_{i=1..k} (1 - q^(rest+i)) / (1 - q^i). Every partial product
// is itself a polynomial with integer coefficients.
std::vector<Wide> gaussian_binomial(std::size_t n, std::size_t m) {
    const std::size_t k = std::min(n, m);
    const std::size_t rest = std::max(n, m);
    std::vector<Wide> c(n * m + k + 1, 0);
    c[0] = 1;
    std::size_t degree = 0;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::size_t a = rest + i;
        const std::size_t top = degree + a;
        for (std::size_t j = top; j >= a; --j) {
            c[j] -= c[j - a];
        }
        for (std::size_t j = i; j <= top; ++j) c[j] += c[j - i];
        degree = i * rest;
    }
    c.resize(n * m + 1);
    return c;
}

}  // namespace

std::string_view to_string(MwMethod method) {
    return method == MwMethod::Exact ? "exact" : "normal-approximation";
}

std::vector<double> u_null_counts(std::size_t n, std::size_t m) {
    const auto wide = gaussian_binomial(n, m);
    std::vector<double> out(wide.size());
    std::transform(wide.begin(), wide.end(), out.begin(), [](Wide w) { return static_cast<double>(w); });
    return out;
}

double mann_whitney_exact_p(double u_min, std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) throw std::invalid_argument("mann_whitney_exact_p: empty sample");
    const auto counts = gaussian_binomial(n, m);
    Wide total = 0;
    for (Wide c : counts) total += c;
    const auto limit = static_cast<std::size_t>(std::floor(u_min));
    Wide tail = 0;
    for (std::size_t u = 0; u <= limit && u < counts.size(); ++u) tail += counts[u];
    const long double p = 2.0L * static_cast<long double>(tail) / static_cast<long double>(total);
    return static_cast<double>(std::min(p, 1.0L));
}

double mann_whitney_normal_p(double u, std::size_t n, std::size_t m, double tie_term) {
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    const double big_n = nd + md;
    const double mu = 0.5 * nd * md;
    double variance = nd * md / 12.0 * (big_n + 1.0);
    if (big_n > 1.0) variance -= nd * md / 12.0 * tie_term / (big_n * (big_n - 1.0));
    if (!(variance > 0.0)) return 1.0;
    const double distance = std::max(0.0, std::abs(u - mu) - 0.5);
    const double z = distance / std::sqrt(variance);
    return std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const Ranking r = rank_pooled(a, b);
    const double nd = static_cast<double>(n);
    const double u_a = r.rank_sum_a - nd * (nd + 1.0) / 2.0;
    const double u_b = nd * static_cast<double>(m) - u_a;

    MannWhitneyResult out;
    out.u = std::min(u_a, u_b);
    const bool ties = r.tie_term > 0.0;
    // Cap on n + m keeps the exact counts inside 128-bit integers.
    if (!ties && std::min(n, m) <= kExactMaxSmallerSample && n + m <= 100000) {
        out.method = MwMethod::Exact;
        out.p = mann_whitney_exact_p(out.u, n, m);
    } else {
        out.method = MwMethod::NormalApproximation;
        out.tie_corrected = ties;
        out.p = mann_whitney_normal_p(out.u, n, m, r.tie_term);
    }
    return out;
}

double exact_mw_oracle(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t total = n + m;
    if (n == 0 || m == 0) throw std::invalid_argument("exact_mw_oracle: empty sample");
    if (total > 12) throw std::invalid_argument("exact_mw_oracle: n + m must be <= 12");

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("exact_mw_oracle: ties are not supported");
    }

    // U_a counts pairs (x in a, y in b) with x > y; work in doubled units
    // relative to n*m so the comparison stays in integers.
    auto doubled_distance = [&](unsigned mask) {
        long long pairs = 0;
        for (std::size_t i = 0; i < total; ++i) {
            if (!(mask & (1u << i))) continue;
            for (std::size_t j = 0; j < total; ++j) {
                if (!(mask & (1u << j)) && pooled[i] > pooled[j]) ++pairs;
            }
        }
        return std::llabs(2 * pairs - static_cast<long long>(n * m));
    };

    unsigned observed = 0;
    for (std::size_t i = 0; i < n; ++i) observed |= 1u << i;
    const long long threshold = doubled_distance(observed);

    long long extreme = 0;
    long long assignments = 0;
    for (unsigned mask = 0; mask < (1u << total); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != n) continue;
        ++assignments;
        if (doubled_distance(mask) >= threshold) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(assignments);
}

std::string_view to_string(Hypothesis h) {
    switch (h) {
        case Hypothesis::H01: return "H01";
        case Hypothesis::H02: return "H02";
        case Hypothesis::H03: return "H03";
        case Hypothesis::H04: return "H04";
    }
    return "?";
}

std::string_view to_string(Decision d) { return d == Decision::Reject ? "reject" : "fail-to-reject"; }

bool parse_hypothesis(std::string_view text, Hypothesis& out) {
    for (Hypothesis h : {Hypothesis::H01, Hypothesis::H02, Hypothesis::H03, Hypothesis::H04}) {
        if (to_string(h) == text) {
            out = h;
            return true;
        }
    }
    return false;
}

bool parse_decision(std::string_view text, Decision& out) {
    if (text == "reject") {
        out = Decision::Reject;
        return true;
    }
    if (text == "fail-to-reject") {
        out = Decision::FailToReject;
        return true;
    }
    return false;
}

HypothesisOutcome decide(Hypothesis label, double p_value, double alpha) {
    if (!(p_value >= 0.0 && p_value <= 1.0)) throw std::invalid_argument("decide: p must lie in [0, 1]");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("decide: alpha must lie in (0, 1)");
    return {label, p_value, alpha, p_value < alpha ? Decision::Reject : Decision::FailToReject};
}

}  // namespace fitroom::stats
