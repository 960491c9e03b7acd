#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "probe.hpp"

namespace hlest {

struct QaeSpec {
    int q = 3;
    double theta = 0.0;  // arcsin(sqrt(a)), in [0, pi/2]

    QaeSpec() = default;
    QaeSpec(int q_, double theta_) : q(q_), theta(theta_) {
        require(q >= 3 && q <= 12, "QaeSpec: q must lie in [3, 12]");
        require(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-15, "QaeSpec: theta must lie in [0, pi/2]");
    }
    std::size_t size() const { return std::size_t{1} << q; }
};

struct QaeDistribution {
    std::vector<double> probs;
};

namespace detail {
// 2*pi*frac(x) with the fractional part taken first, so large k*theta products
// lose no precision in the trigonometric call.
inline cplx unit_phase(double turns) {
    const double f = turns - std::floor(turns);
    const double a = 2.0 * std::numbers::pi * f;
    return {std::cos(a), std::sin(a)};
}

inline void check_length(const ProbeState& s, const QaeSpec& spec, const char* who) {
    require(s.size() == spec.size(), std::string(who) + ": probe length must equal 2^q");
}
}  // namespace detail

// P_l = 1/2 |sum_k a_k/sqrt(n) e^{i2pi(1-theta/pi-l/n)k}|^2 + 1/2 |sum_k a_k/sqrt(n) e^{i2pi(theta/pi-l/n)k}|^2
inline QaeDistribution qae_distribution(const ProbeState& s, const QaeSpec& spec) {
    detail::check_length(s, spec, "qae_distribution");
    const std::size_t n = spec.size();
    const double tp = spec.theta / std::numbers::pi;
    // e^{+-i2pi k theta/pi}, per k.
    std::vector<cplx> wk(n);
    for (std::size_t k = 0; k < n; ++k) wk[k] = detail::unit_phase(std::fmod(static_cast<double>(k) * tp, 1.0));
    std::vector<cplx> roots(n);
    for (std::size_t j = 0; j < n; ++j) roots[j] = detail::unit_phase(-static_cast<double>(j) / static_cast<double>(n));

    QaeDistribution d;
    d.probs.assign(n, 0.0);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t l = 0; l < n; ++l) {
        cplx plus = 0.0, minus = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx r = roots[(k * l) & (n - 1)];
            const double a = s.amplitudes[k];
            plus += a * std::conj(wk[k]) * r;
            minus += a * wk[k] * r;
        }
        d.probs[l] = 0.5 * scale * (std::norm(plus) + std::norm(minus));
    }
    return d;
}

// E[cos(2 s theta_hat)] from adjacent (s=1) or next-adjacent (s=2) amplitude products.
inline double expected_cosine(const ProbeState& s, const QaeSpec& spec, int order) {
    require(order == 1 || order == 2, "expected_cosine: order must be 1 or 2");
    detail::check_length(s, spec, "expected_cosine");
    const auto& a = s.amplitudes;
    const std::size_t n = a.size();
    const double th = spec.theta;
    if (order == 1) {
        double band = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) band += a[k + 1] * a[k];
        return std::cos(2.0 * th) * band + a[0] * a[n - 1] * std::cos(2.0 * static_cast<double>(n - 1) * th);
    }
    double band = 0.0;
    for (std::size_t k = 0; k + 2 < n; ++k) band += a[k + 2] * a[k];
    return std::cos(4.0 * th) * band +
           (a[0] * a[n - 2] + a[1] * a[n - 1]) * std::cos(2.0 * static_cast<double>(n - 2) * th);
}

struct WCoefficients {
    double a, b, a0, b1, C;
};

inline WCoefficients w_coefficients(const QaeSpec& spec) {
    require(spec.q >= 3, "w_matrix: q must be >= 3");
    const double th = spec.theta;
    const double n = static_cast<double>(spec.size());
    const double c2 = std::cos(2.0 * th);
    const double c4 = std::cos(4.0 * th);
    return {-0.25 * c2 * c2, c4 / 16.0, -0.25 * c2 * std::cos(2.0 * (n - 1.0) * th),
            std::cos(2.0 * (n - 2.0) * th) / 16.0, 0.25 + 0.125 * c4};
}

struct WForm {
    SymMatrix W;
    double C = 0.0;
};

inline WForm w_matrix(const QaeSpec& spec) {
    const auto co = w_coefficients(spec);
    const std::size_t n = spec.size();
    WForm f{SymMatrix(n), co.C};
    auto put = [&](std::size_t i, std::size_t j, double v) { f.W(i, j) = f.W(j, i) = v; };
    for (std::size_t k = 0; k + 1 < n; ++k) put(k, k + 1, co.a);
    for (std::size_t k = 0; k + 2 < n; ++k) put(k, k + 2, co.b);
    put(0, n - 1, co.a0);
    put(0, n - 2, co.b1);
    put(1, n - 1, co.b1);
    return f;
}

// alpha^T W alpha + C without forming W.
inline double mse_quadform(const std::vector<double>& a, const QaeSpec& spec) {
    require(a.size() == spec.size(), "mse_quadform: probe length must equal 2^q");
    const auto co = w_coefficients(spec);
    const std::size_t n = a.size();
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) s1 += a[k] * a[k + 1];
    for (std::size_t k = 0; k + 2 < n; ++k) s2 += a[k] * a[k + 2];
    return 2.0 * (co.a * s1 + co.b * s2 + co.a0 * a[0] * a[n - 1] + co.b1 * (a[0] * a[n - 2] + a[1] * a[n - 1])) +
           co.C;
}

inline double mse_quadform(const ProbeState& s, const QaeSpec& spec) { return mse_quadform(s.amplitudes, spec); }

inline double mse_from_distribution(const ProbeState& s, const QaeSpec& spec) {
    const auto d = qae_distribution(s, spec);
    const double n = static_cast<double>(spec.size());
    const double a = std::sin(spec.theta) * std::sin(spec.theta);
    double m = 0.0;
    for (std::size_t l = 0; l < d.probs.size(); ++l) {
        const double sl = std::sin(static_cast<double>(l) * std::numbers::pi / n);
        const double e = sl * sl - a;
        m += d.probs[l] * e * e;
    }
    return m;
}

// The estimator 2a_hat - 1 of an expectation value has four times the MSE of a_hat.
inline double expectation_value_mse(double amplitude_mse) { return 4.0 * amplitude_mse; }

// Half-open uniform theta grid: lo + i (hi - lo)/points, i < points.
inline std::vector<double> theta_grid(double lo, double hi, int points) {
    require(points >= 1, "theta_grid: need at least one point");
    require(lo >= 0.0 && lo < hi && hi <= std::numbers::pi / 2 + 1e-15, "theta_grid: need 0 <= lo < hi <= pi/2");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / points;
    return g;
}

struct MaxMse {
    double max = 0.0;
    double argmax = 0.0;
    std::vector<std::pair<double, double>> curve;  // (theta, mse)
};

inline MaxMse max_mse(const ProbeState& s, int q, int grid_points, double theta_lo, double theta_hi) {
    require(s.size() == (std::size_t{1} << q), "max_mse: probe length must equal 2^q");
    MaxMse r;
    r.max = -1.0;
    for (double th : theta_grid(theta_lo, theta_hi, grid_points)) {
        const double m = mse_quadform(s, QaeSpec(q, th));
        r.curve.emplace_back(th, m);
        if (m > r.max) {
            r.max = m;
            r.argmax = th;
        }
    }
    return r;
}

struct OptimalProbe {
    ProbeState state;
    double mse = 0.0;
};

inline OptimalProbe optimal_probe(const QaeSpec& spec) {
    require(spec.q >= 3 && spec.q <= 9, "optimal_probe: q must lie in [3, 9]");
    const auto f = w_matrix(spec);
    const auto es = jacobi_eigen(f.W, true);
    std::vector<double> v = es.vectors.front();
    std::size_t big = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[big])) big = i;
    if (v[big] < 0.0)
        for (auto& x : v) x = -x;
    const double r = std::sqrt(norm_squared(v));
    for (auto& x : v) x /= r;
    return {explicit_probe(std::move(v)), es.values.front() + f.C};
}

// lambda_min(W) + C through the eigenvalue-only solver; for long sweeps.
inline double optimal_mse(const QaeSpec& spec) {
    const auto f = w_matrix(spec);
    return symmetric_eigenvalues(f.W).front() + f.C;
}

inline std::uint64_t qae_expectation_queries(int q) {
    require(q >= 1 && q <= 62, "qae_expectation_queries: q must lie in [1, 62]");
    return (std::uint64_t{1} << q) + 1;
}

}  // namespace hlest
