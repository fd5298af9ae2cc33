#ifndef OBCM_STATS_HPP
#define OBCM_STATS_HPP

// Two-sample Wilcoxon rank-sum (Mann-Whitney U) test.
//
// Pooled observations are ranked with midranks for ties. rank_sum is the
// sum of the first sample's ranks R1 and U = R1 - |a|(|a|+1)/2, so U counts
// the pairs (x in a, y in b) with x > y, ties counted half.
//
// For tie-free pools of total size <= 16 the p-values are exact: the null
// distribution of U is tabulated by counting, for every k, the |a|-subsets
// of ranks {1..N} with each possible rank sum (equivalent to enumerating
// all C(N,|a|) rank assignments). Larger or tied samples use the normal
// approximation with tie-corrected variance and continuity correction.
//
// One-sided direction: p_less tests "a stochastically smaller than b",
// i.e. small U gives small p_less. Crossing counts are compared with lower
// being better, so p_less(a, b) small reads "algorithm a is better".

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace obcm {

enum class test_method { exact, normal_approximation };

struct test_result {
    double u_statistic{0.0};
    double rank_sum{0.0};
    double p_two_sided{1.0};
    double p_less{1.0};
    test_method method{test_method::exact};
};

inline const char* to_string(test_method m) {
    return m == test_method::exact ? "exact" : "normal_approximation";
}

inline constexpr std::size_t wilcoxon_exact_max_total = 16;

namespace detail {

// Number of k-subsets of {1..n} by rank sum, as doubles (exact for the
// sizes used here: totals fit in far fewer than 53 bits).
inline std::vector<std::vector<double>> rank_sum_counts(std::size_t n, std::size_t k) {
    const std::size_t max_sum = n * (n + 1) / 2;
    std::vector<std::vector<double>> ways(k + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t item = 1; item <= n; ++item) {
        for (std::size_t chosen = std::min(item, k); chosen >= 1; --chosen) {
            for (std::size_t sum = max_sum; sum >= item; --sum) {
                ways[chosen][sum] += ways[chosen - 1][sum - item];
            }
        }
    }
    return ways;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace detail

inline test_result wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    if (na == 0 || nb == 0)
        throw std::invalid_argument("wilcoxon_rank_sum requires non-empty samples");

    // Pool and rank with midranks.
    std::vector<std::pair<double, int>> pooled;  // (value, sample label)
    pooled.reserve(n);
    for (double x : a) pooled.push_back({x, 0});
    for (double x : b) pooled.push_back({x, 1});
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });

    double rank_sum_a = 0.0;
    double tie_term = 0.0;  // sum of t^3 - t over tie groups
    bool has_ties = false;
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && pooled[hi].first == pooled[lo].first) ++hi;
        const double group = static_cast<double>(hi - lo);
        const double midrank = (static_cast<double>(lo + 1) + static_cast<double>(hi)) / 2.0;
        for (std::size_t k = lo; k < hi; ++k)
            if (pooled[k].second == 0) rank_sum_a += midrank;
        if (hi - lo > 1) {
            has_ties = true;
            tie_term += group * group * group - group;
        }
        lo = hi;
    }

    test_result result;
    result.rank_sum = rank_sum_a;
    result.u_statistic = rank_sum_a - static_cast<double>(na) * (na + 1) / 2.0;
    const double nm = static_cast<double>(na) * static_cast<double>(nb);

    if (n <= wilcoxon_exact_max_total && !has_ties) {
        result.method = test_method::exact;
        const auto ways = detail::rank_sum_counts(n, na);
        const std::size_t s_obs = static_cast<std::size_t>(std::llround(rank_sum_a));
        double below = 0.0, above = 0.0, total = 0.0;
        for (std::size_t s = 0; s < ways[na].size(); ++s) {
            const double w = ways[na][s];
            total += w;
            if (s <= s_obs) below += w;
            if (s >= s_obs) above += w;
        }
        result.p_less = below / total;
        result.p_two_sided = std::min(1.0, 2.0 * std::min(below, above) / total);
    } else {
        result.method = test_method::normal_approximation;
        const double mean = nm / 2.0;
        const double nr = static_cast<double>(n);
        const double variance =
            nm / 12.0 * ((nr + 1.0) - tie_term / (nr * (nr - 1.0)));
        if (variance <= 0.0) {
            result.p_less = 0.5;
            result.p_two_sided = 1.0;
        } else {
            const double sigma = std::sqrt(variance);
            const double u = result.u_statistic;
            const double p_less = detail::normal_cdf((u - mean + 0.5) / sigma);
            const double p_greater = detail::normal_cdf((mean - u + 0.5) / sigma);
            result.p_less = p_less;
            result.p_two_sided = std::min(1.0, 2.0 * std::min(p_less, p_greater));
        }
    }
    return result;
}

}  // namespace obcm

#endif
