#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsdeg.hpp"
#include "numerics.hpp"
#include "sampling.hpp"

namespace hlest {

enum class Method { shadow, qae, method1, method2, wyy };

inline std::string method_name(Method m) {
    switch (m) {
        case Method::shadow: return "shadow";
        case Method::qae: return "qae";
        case Method::method1: return "method1";
        case Method::method2: return "method2";
        case Method::wyy: return "wyy";
    }
    return "unknown";
}

inline Method parse_method(std::string_view s) {
    if (s == "shadow") return Method::shadow;
    if (s == "qae") return Method::qae;
    if (s == "method1") return Method::method1;
    if (s == "method2") return Method::method2;
    if (s == "wyy") return Method::wyy;
    throw domain_error("unknown method: " + std::string(s));
}

struct ComplexityParams {
    int N = 0;
    int eta = 0;
    int k = 1;
    double eps = 1e-3;
    Method method = Method::method1;

    BigInt M() const { return binomial_exact(N, k) * binomial_exact(N, k); }
};

struct IterationTrace {
    int q = 0;
    double delta_q = 0.0;
    std::uint64_t R_q = 0;
    double sigma = 0.0;
    double t = 0.0;
    std::uint64_t Q = 0;
    BigInt L_cum = 0;
};

struct QueryResult {
    BigInt L = 0;
    std::vector<IterationTrace> trace;
};

struct SigmaInputs {
    double norm_bound = 0.0;  // surrogate for the norm of the sum of squared observables
    double log_dim = 0.0;     // ln of the sector dimension
    double v = 0.0;           // probe variance
    double delta_prime = 0.0;
};

// sqrt(2 v ||sum O^2|| ln(2m/delta')) + (4/3) ln(2m/delta'), before the ceiling.
inline double sigma_bound(const SigmaInputs& in) {
    require(in.norm_bound > 0.0 && in.v > 0.0 && in.log_dim >= 0.0, "sigma: inputs must be positive");
    require(in.delta_prime > 0.0 && in.delta_prime < 1.0, "sigma: delta' must lie in (0, 1)");
    const double lg = std::log(2.0) + in.log_dim - std::log(in.delta_prime);
    return std::sqrt(2.0 * in.v * in.norm_bound * lg) + 4.0 / 3.0 * lg;
}

constexpr double kFailureBudget = 1.0 / (80.0 * (1.0 + std::numbers::pi) * (1.0 + std::numbers::pi));

struct Method1Options {
    int p = 3;
    double v = 0.1652;
    double delta_prime = 1.0 / 1024.0;
    double mu = 0.011 + 1.0 / 12.0;
    double hs_eps = 1.0 / 16384.0;
};

struct Method2Options {
    int p = 3;
    double v = 0.1652;
    double mu = 0.011;
};

struct WyyOptions {
    int p = 3;
    double v = 0.328125;  // uniform probe at p = 3
    double mu = 0.18 + 1.0 / 12.0;
    double delta_prime = 1.0 / 1024.0;
    double hs_eps = 1.0 / 16384.0;
};

namespace detail {
inline void check_basic(int N, int k, double eps) {
    require(N >= 1 && N <= 100000, "N must lie in [1, 100000]");
    require(k >= 1 && k <= N, "k must satisfy 1 <= k <= N");
    require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
}

inline void check_sector(int N, int eta, int k, double eps) {
    check_basic(N, k, eps);
    require(eta >= k && eta <= N - k, "eta must satisfy k <= eta <= N - k");
}

inline double to_double(const BigInt& b) { return b.convert_to<double>(); }

// C(eta,k) C(N-eta+k,k)
inline double sector_pair_count(int N, int eta, int k) {
    return to_double(binomial_exact(eta, k) * binomial_exact(N - eta + k, k));
}

inline BigInt big_from_count(double c) {
    require(c >= 0.0 && std::isfinite(c), "count overflow");
    return BigInt(c);
}
}  // namespace detail

inline int q_max_for(double eps) {
    require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
    const double q = guarded_ceil(std::log2(1.0 / (std::sqrt(40.0 / 11.0) * eps)));
    return q < 0.0 ? 0 : static_cast<int>(q);
}

inline double delta_q(int q, int q_max) { return std::ldexp(kFailureBudget, 3 * (q - q_max)); }

// ceil(eps^-2 C(2N,2k)/C(N,k)). When eps^-2 is an integer (eps = 10^-d, halvings
// of those) the count is formed exactly; otherwise in long double.
inline BigInt shadow_queries(int N, int k, double eps) {
    detail::check_basic(N, k, eps);
    const BigInt num = binomial_exact(2 * N, 2 * k);
    const BigInt den = binomial_exact(N, k);
    const long double inv = 1.0L / (static_cast<long double>(eps) * eps);
    const long double ri = std::round(inv);
    if (ri >= 1.0L && ri < 1.8e19L && std::abs(inv - ri) <= 1e-9L * inv) {
        const BigInt x = num * BigInt(static_cast<std::uint64_t>(ri));
        return (x + den - 1) / den;
    }
    const long double ratio = num.convert_to<long double>() / den.convert_to<long double>();
    const long double v = ratio * inv;
    const long double r = std::round(v);
    return BigInt(std::abs(v - r) <= 1e-15L * v ? r : std::ceil(v));
}

inline int qae_precision_bits(double eps) {
    require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
    return static_cast<int>(guarded_ceil(std::log2(std::numbers::pi / eps)));
}

inline BigInt qae_queries(int N, int k, double eps) {
    detail::check_basic(N, k, eps);
    const int q = qae_precision_bits(eps);
    require(q <= 62, "qae_queries: eps too small");
    const BigInt per = BigInt((std::uint64_t{1} << q) + 1);
    return binomial_exact(N, k) * binomial_exact(N, k) * per;
}

inline double sigma_method1(int N, int eta, int k, double v, double delta_prime) {
    require(k >= 1 && eta >= k && eta <= N - k, "sigma_method1: need k <= eta <= N - k");
    return guarded_ceil(sigma_bound({2.0 * detail::sector_pair_count(N, eta, k), log_binomial(N, eta), v, delta_prime}));
}

inline double sigma_method2(int N, int eta, int k, double v, double delta_prime, std::uint64_t R) {
    require(R >= 1, "sigma_method2: R must be >= 1");
    require(k >= 1 && eta >= k && eta <= N - k, "sigma_method2: need k <= eta <= N - k");
    return guarded_ceil(sigma_bound({2.0 * static_cast<double>(R) * detail::sector_pair_count(N, eta, k),
                                     log_binomial(N, eta), v, delta_prime}));
}

inline double sigma_wyy(int N, int k, double v, double delta_prime) {
    const double M = detail::to_double(binomial_exact(N, k) * binomial_exact(N, k));
    return guarded_ceil(sigma_bound({M, N * std::log(2.0), v, delta_prime}));
}

namespace detail {
inline double log_M(int N, int k) { return 2.0 * log_binomial(N, k); }
}  // namespace detail

inline QueryResult method1_queries(int N, int eta, int k, double eps, const Method1Options& o = {}) {
    detail::check_sector(N, eta, k, eps);
    const int qm = q_max_for(eps);
    const double sigma = sigma_method1(N, eta, k, o.v, o.delta_prime);
    QueryResult r;
    for (int q = 0; q <= qm; ++q) {
        IterationTrace it;
        it.q = q;
        it.delta_q = delta_q(q, qm);
        it.R_q = min_samples(o.mu, std::log(it.delta_q) - std::log(2.0) - detail::log_M(N, k));
        it.sigma = sigma;
        it.t = std::ldexp(sigma, o.p + q + 1);
        it.Q = hs_degree(it.t, o.hs_eps);
        r.L += BigInt(2) * it.Q * it.R_q;
        it.L_cum = r.L;
        r.trace.push_back(it);
    }
    return r;
}

inline QueryResult method2_queries(int N, int eta, int k, double eps, const Method2Options& o = {}) {
    detail::check_sector(N, eta, k, eps);
    const int qm = q_max_for(eps);
    QueryResult r;
    for (int q = 0; q <= qm; ++q) {
        IterationTrace it;
        it.q = q;
        it.delta_q = delta_q(q, qm);
        it.R_q = min_samples(o.mu, std::log(it.delta_q) - std::log(2.0) - detail::log_M(N, k));
        const double dq2 = it.delta_q * it.delta_q;
        it.sigma = sigma_method2(N, eta, k, o.v, dq2 / 80.0, it.R_q);
        it.t = std::ldexp(it.sigma, o.p + q + 1);
        it.Q = hs_degree(it.t, dq2 / 64.0);
        r.L += BigInt(2) * it.Q;
        it.L_cum = r.L;
        r.trace.push_back(it);
    }
    return r;
}

inline QueryResult wyy_queries(int N, int k, double eps, const WyyOptions& o = {}) {
    detail::check_basic(N, k, eps);
    const int qm = q_max_for(eps);
    const double sigma = sigma_wyy(N, k, o.v, o.delta_prime);
    QueryResult r;
    for (int q = 0; q <= qm; ++q) {
        IterationTrace it;
        it.q = q;
        it.delta_q = delta_q(q, qm);
        it.R_q = min_samples(o.mu, std::log(it.delta_q) - detail::log_M(N, k));
        it.sigma = sigma;
        it.t = std::ldexp(sigma, o.p + q + 1);
        it.Q = hs_degree(it.t, o.hs_eps);
        r.L += BigInt(2) * it.Q * it.R_q;
        it.L_cum = r.L;
        r.trace.push_back(it);
    }
    return r;
}

inline QueryResult run_method(const ComplexityParams& c) {
    switch (c.method) {
        case Method::shadow: return {shadow_queries(c.N, c.k, c.eps), {}};
        case Method::qae: return {qae_queries(c.N, c.k, c.eps), {}};
        case Method::method1: return method1_queries(c.N, c.eta, c.k, c.eps);
        case Method::method2: return method2_queries(c.N, c.eta, c.k, c.eps);
        case Method::wyy: return wyy_queries(c.N, c.k, c.eps);
    }
    throw domain_error("unknown method");
}

enum class SweepAxis { eps, N };

inline constexpr std::array<Method, 5> kSweepColumns = {Method::shadow, Method::qae, Method::wyy, Method::method1,
                                                         Method::method2};

struct SweepRow {
    double axis = 0.0;
    int N = 0, eta = 0;
    double eps = 0.0;
    std::array<std::optional<BigInt>, 5> cells;  // ordered as kSweepColumns
};

inline int hubbard_filling(int N) { return (7 * N + 7) / 8; }

// Every method at every axis value. Sweeping N with hubbard filling sets
// eta = ceil(7N/8); points whose preconditions fail leave an empty cell.
inline std::vector<SweepRow> complexity_sweep(const ComplexityParams& base, SweepAxis axis,
                                              const std::vector<double>& values, bool hubbard) {
    require(!values.empty(), "complexity_sweep: no axis values");
    std::vector<SweepRow> rows;
    for (double x : values) {
        SweepRow row;
        row.axis = x;
        ComplexityParams c = base;
        if (axis == SweepAxis::eps) {
            c.eps = x;
        } else {
            require(x >= 1.0 && x == std::floor(x), "complexity_sweep: N values must be positive integers");
            c.N = static_cast<int>(x);
        }
        if (hubbard) c.eta = hubbard_filling(c.N);
        row.N = c.N;
        row.eta = c.eta;
        row.eps = c.eps;
        for (std::size_t i = 0; i < kSweepColumns.size(); ++i) {
            c.method = kSweepColumns[i];
            try {
                row.cells[i] = run_method(c).L;
            } catch (const domain_error&) {
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string format_axis(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string s = "axis,shadow,qae,wyy,method1,method2\n";
    for (const auto& r : rows) {
        s += format_axis(r.axis);
        for (const auto& c : r.cells) {
            s += ',';
            if (c) s += c->str();
        }
        s += '\n';
    }
    return s;
}

}  // namespace hlest
