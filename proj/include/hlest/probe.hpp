#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numerics.hpp"

namespace hlest {

struct Grid {
    int p = 0;
    std::vector<double> points;
};

// x_mu = mu/2^p - 1/2 + 1/2^{p+1}, written as (2mu - 2^p + 1)/2^{p+1} so that the
// mirror relation x_mu = -x_{2^p-1-mu} holds bit-exactly.
inline double grid_point(int p, std::size_t mu) {
    const double n = std::ldexp(1.0, p);
    return (2.0 * static_cast<double>(mu) - n + 1.0) / (2.0 * n);
}

inline Grid make_grid(int p) {
    require(p >= 1 && p <= 12, "make_grid: p must lie in [1, 12]");
    Grid g;
    g.p = p;
    const std::size_t n = std::size_t{1} << p;
    g.points.resize(n);
    for (std::size_t mu = 0; mu < n; ++mu) g.points[mu] = grid_point(p, mu);
    return g;
}

enum class Family { uniform, cos1, cos2, kaiser, sine_qae, explicit_state };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::uniform: return "uniform";
        case Family::cos1: return "cos1";
        case Family::cos2: return "cos2";
        case Family::kaiser: return "kaiser";
        case Family::sine_qae: return "sine_qae";
        case Family::explicit_state: return "explicit";
    }
    return "unknown";
}

inline Family parse_family(std::string_view s) {
    if (s == "uniform") return Family::uniform;
    if (s == "cos1") return Family::cos1;
    if (s == "cos2") return Family::cos2;
    if (s == "kaiser") return Family::kaiser;
    if (s == "sine_qae" || s == "sine") return Family::sine_qae;
    if (s == "explicit") return Family::explicit_state;
    throw domain_error("unknown probe family: " + std::string(s));
}

struct ProbeState {
    int p = 0;
    Family family = Family::explicit_state;
    double alpha = 0.0;  // kaiser only
    std::vector<double> amplitudes;

    std::size_t size() const { return amplitudes.size(); }
};

inline double norm_squared(const std::vector<double>& c) {
    double s = 0.0;
    for (double x : c) s += x * x;
    return s;
}

inline ProbeState make_probe(Family family, int p, std::optional<double> alpha = std::nullopt) {
    require(p >= 1 && p <= 12, "make_probe: p must lie in [1, 12]");
    require(family != Family::explicit_state, "make_probe: explicit states are built with explicit_probe");
    require(alpha.has_value() == (family == Family::kaiser), "make_probe: alpha is required for kaiser only");
    const std::size_t n = std::size_t{1} << p;
    const double nd = static_cast<double>(n);
    const double pi = std::numbers::pi;
    ProbeState s;
    s.p = p;
    s.family = family;
    s.amplitudes.resize(n);

    switch (family) {
        case Family::uniform:
            for (auto& c : s.amplitudes) c = 1.0 / std::sqrt(nd);
            break;
        case Family::cos1:
            for (std::size_t mu = 0; mu < n; ++mu)
                s.amplitudes[mu] = std::sqrt(2.0 / (nd + 1.0)) * std::cos(nd * grid_point(p, mu) * pi / (nd + 1.0));
            break;
        case Family::cos2:
            for (std::size_t mu = 0; mu < n; ++mu)
                s.amplitudes[mu] = std::sqrt(2.0 / nd) * std::cos(grid_point(p, mu) * pi);
            break;
        case Family::kaiser: {
            require(*alpha >= 0.0 && std::isfinite(*alpha), "make_probe: alpha must be >= 0");
            s.alpha = *alpha;
            const double i0a = bessel_i0(pi * *alpha);
            for (std::size_t mu = 0; mu < n; ++mu) {
                const double x = 2.0 * grid_point(p, mu);
                s.amplitudes[mu] = bessel_i0(pi * *alpha * std::sqrt(1.0 - x * x)) / i0a;
            }
            const double r = std::sqrt(norm_squared(s.amplitudes));
            for (auto& c : s.amplitudes) c /= r;
            break;
        }
        case Family::sine_qae:
            // Indexed by the computational label k, not by the grid.
            for (std::size_t k = 0; k < n; ++k)
                s.amplitudes[k] = std::sqrt(2.0 / nd) * std::sin(static_cast<double>(k) * pi / nd);
            break;
        case Family::explicit_state:
            break;
    }
    return s;
}

inline ProbeState explicit_probe(std::vector<double> amplitudes) {
    const std::size_t n = amplitudes.size();
    require(n >= 2 && (n & (n - 1)) == 0, "explicit_probe: length must be a power of two >= 2");
    require(std::abs(norm_squared(amplitudes) - 1.0) <= 1e-10, "explicit_probe: state is not normalized");
    ProbeState s;
    s.p = 0;
    while ((std::size_t{1} << s.p) < n) ++s.p;
    s.family = Family::explicit_state;
    s.amplitudes = std::move(amplitudes);
    return s;
}

// v = E[(2X)^2] with Pr[X = x_mu] = c_mu^2.
inline double probe_variance(const ProbeState& s) {
    require(s.p >= 1 && s.size() == (std::size_t{1} << s.p), "probe_variance: amplitude count does not match p");
    double v = 0.0;
    for (std::size_t mu = 0; mu < s.size(); ++mu) {
        const double x2 = 2.0 * grid_point(s.p, mu);
        v += x2 * x2 * s.amplitudes[mu] * s.amplitudes[mu];
    }
    return v;
}

}  // namespace hlest
