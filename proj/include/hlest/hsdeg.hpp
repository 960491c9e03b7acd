#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "numerics.hpp"

namespace hlest {

struct DegreeQuery {
    double t = 1.0;
    double eps = 0.5;
};

// ln(4 t^l / (2^l l!)) - ln(eps/8); the degree condition holds where this is <= 0.
inline double hs_degree_margin(double t, double eps, std::uint64_t l) {
    const double ld = static_cast<double>(l);
    return std::log(4.0) + ld * std::log(t / 2.0) - std::lgamma(ld + 1.0) - std::log(eps / 8.0);
}

// Q = -1 + min{ l : 4 t^l/(2^l l!) <= eps/8 }. The margin is positive at l = 0,
// rises while l + 1 < t/2 and then falls for good, so the feasible set is a ray
// and doubling followed by bisection finds its start.
inline std::uint64_t hs_degree(double t, double eps) {
    require(t > 0.0 && std::isfinite(t), "hs_degree: t must be positive");
    require(eps > 0.0 && eps < 1.0, "hs_degree: eps must lie in (0, 1)");
    auto ok = [&](std::uint64_t l) { return hs_degree_margin(t, eps, l) <= 0.0; };
    std::uint64_t hi = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(t)));
    std::uint64_t lo = 0;  // fails
    while (!ok(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi - 1;
}

inline std::uint64_t hs_degree(const DegreeQuery& q) { return hs_degree(q.t, q.eps); }

}  // namespace hlest
