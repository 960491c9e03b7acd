#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hlest {

using BigInt = boost::multiprecision::cpp_int;

// Precondition failures throw this; the CLI maps it to exit code 1.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw domain_error(what);
}

// Natural log of a probability or count. -inf encodes probability 0.
struct LogProb {
    double value = -std::numeric_limits<double>::infinity();

    LogProb() = default;
    explicit LogProb(double v) : value(v) {
        require(!std::isnan(v), "LogProb: NaN");
    }
    static LogProb from_prob(double p) { return LogProb(std::log(p)); }
    double prob() const { return std::exp(value); }
    bool is_zero() const { return value == -std::numeric_limits<double>::infinity(); }
};

// ln C(n, k). Small k uses a direct sum of logs so that the relative error stays
// near machine precision even when lgamma(n+1) is large.
inline double log_binomial(std::uint64_t n, std::uint64_t k) {
    require(k <= n, "log_binomial: k > n");
    k = std::min(k, n - k);
    if (k == 0) return 0.0;
    if (k <= 4096) {
        double s = 0.0;
        const double base = static_cast<double>(n - k);
        for (std::uint64_t i = 1; i <= k; ++i)
            s += std::log1p(base / static_cast<double>(i));
        return s;
    }
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Exact C(n, k); zero outside 0 <= k <= n.
inline BigInt binomial_exact(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

// I0(x) by its power series, stopped once a term drops below 1e-16 of the sum.
inline double bessel_i0(double x) {
    require(x >= 0.0 && std::isfinite(x), "bessel_i0: x must be finite and >= 0");
    const double h = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 100000; ++m) {
        term *= h / (static_cast<double>(m) * m);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

inline double log_sum_exp(const std::vector<double>& terms) {
    require(!terms.empty(), "log_sum_exp: empty list");
    const double mx = *std::max_element(terms.begin(), terms.end());
    if (mx == -std::numeric_limits<double>::infinity()) return mx;
    if (mx == std::numeric_limits<double>::infinity()) return mx;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    return mx + std::log(s);
}

// ceil(x), except values within a relative 1e-12 of an integer snap to it.
// Keeps formula results like 300.00000000000006 from rounding up.
inline double guarded_ceil(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x))) return r;
    return std::ceil(x);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace hlest
