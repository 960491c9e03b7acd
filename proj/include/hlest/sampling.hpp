#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "numerics.hpp"

namespace hlest {

struct TailQuery {
    double mu = 0.0;
    std::uint64_t R = 1;
    LogProb target;
};

namespace detail {
inline double log_binom_pmf(std::uint64_t m, double log_mu, double log_1mu, std::uint64_t n) {
    return log_binomial(n, m) + static_cast<double>(m) * log_mu + static_cast<double>(n - m) * log_1mu;
}
}  // namespace detail

// ln F(k; mu, n), summed in log space.
inline double binom_cdf_log(std::uint64_t k, double mu, std::uint64_t n) {
    require(k <= n, "binom_cdf_log: need 0 <= k <= n");
    require(mu > 0.0 && mu < 1.0, "binom_cdf_log: need 0 < mu < 1");
    const double lm = std::log(mu), l1 = std::log1p(-mu);
    std::vector<double> t;
    t.reserve(k + 1);
    for (std::uint64_t m = 0; m <= k; ++m) t.push_back(detail::log_binom_pmf(m, lm, l1, n));
    return log_sum_exp(t);
}

// ln(1 - F(floor((R+1)/2) - 1; mu, R)): the chance that the median of R shots,
// each wrong with probability mu, is wrong. Summed over the upper terms directly.
inline double median_tail(std::uint64_t R, double mu) {
    require(R >= 1, "median_tail: R must be >= 1");
    require(mu > 0.0, "median_tail: mu must be > 0");
    require(mu < 0.5, "median_tail: mu must be < 1/2 for the median to amplify");
    const std::uint64_t first = (R + 1) / 2;  // floor((R+1)/2) - 1 + 1
    const double lm = std::log(mu), l1 = std::log1p(-mu);
    std::vector<double> t;
    t.reserve(R - first + 1);
    for (std::uint64_t m = first; m <= R; ++m) t.push_back(detail::log_binom_pmf(m, lm, l1, R));
    return log_sum_exp(t);
}

inline double hoeffding_log_bound(std::uint64_t R, double mu) {
    return -2.0 * static_cast<double>(R) * (0.5 - mu) * (0.5 - mu);
}

inline std::uint64_t hoeffding_samples(double mu, double log_target) {
    return static_cast<std::uint64_t>(std::ceil(log_target / (-2.0 * (0.5 - mu) * (0.5 - mu))));
}

// Smallest R with median_tail(R, mu) <= log_target. The tail is nonincreasing
// along odd R, so odd R = 2j+1 is bracketed by doubling j and then bisected.
// An even R = 2j never beats 2j-1, but it is checked to honour both parities.
inline std::uint64_t min_samples(double mu, double log_target) {
    require(mu > 0.0 && mu < 0.5, "min_samples: need 0 < mu < 1/2");
    require(log_target < 0.0, "min_samples: log target must be < 0");
    auto ok = [&](std::uint64_t R) { return median_tail(R, mu) <= log_target; };
    if (ok(1)) return 1;
    std::uint64_t lo = 0, hi = 1;  // j indices; R(lo) fails
    while (!ok(2 * hi + 1)) {
        lo = hi;
        hi *= 2;
        require(hi < (std::uint64_t{1} << 40), "min_samples: no feasible sample count");
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (ok(2 * mid + 1))
            hi = mid;
        else
            lo = mid;
    }
    const std::uint64_t R = 2 * hi + 1;
    if (ok(R - 1)) return R - 1;
    return R;
}

}  // namespace hlest
