#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "linalg.hpp"
#include "probe.hpp"

namespace hlest {

struct FailureCurve {
    std::vector<double> thetas;
    std::vector<double> probs;
};

// P(l|theta) = |(1/sqrt(n)) sum_mu c_mu e^{2 pi i (theta - l/n) mu}|^2.
inline std::vector<double> qpe_distribution(const ProbeState& s, double theta) {
    require(theta >= 0.0 && theta < 1.0, "qpe_distribution: theta must lie in [0, 1)");
    const std::size_t n = s.size();
    require(n >= 2 && (n & (n - 1)) == 0, "qpe_distribution: probe length must be a power of two");
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<cplx> w(n), roots(n);
    for (std::size_t mu = 0; mu < n; ++mu) {
        const double f = std::fmod(theta * static_cast<double>(mu), 1.0);
        w[mu] = s.amplitudes[mu] * cplx(std::cos(two_pi * f), std::sin(two_pi * f));
        const double g = -two_pi * static_cast<double>(mu) / static_cast<double>(n);
        roots[mu] = cplx(std::cos(g), std::sin(g));
    }
    std::vector<double> p(n);
    for (std::size_t l = 0; l < n; ++l) {
        cplx acc = 0.0;
        for (std::size_t mu = 0; mu < n; ++mu) acc += w[mu] * roots[(l * mu) & (n - 1)];
        p[l] = std::norm(acc) / static_cast<double>(n);
    }
    return p;
}

// Distance on the unit phase circle.
inline double periodic_distance(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

inline double failure_probability(const ProbeState& s, double theta) {
    const auto p = qpe_distribution(s, theta);
    const double n = static_cast<double>(p.size());
    const double cut = 1.0 / (2.0 * std::numbers::pi);
    double f = 0.0;
    for (std::size_t l = 0; l < p.size(); ++l)
        if (periodic_distance(static_cast<double>(l) / n, theta) > cut) f += p[l];
    return std::clamp(f, 0.0, 1.0);
}

struct MaxFailure {
    double max = 0.0;
    double argmax = 0.0;
    FailureCurve curve;  // theta <= 1/2 only; the rest mirrors it
};

inline MaxFailure max_failure(const ProbeState& s, int grid_points) {
    require(grid_points >= 1, "max_failure: need at least one grid point");
    MaxFailure r;
    r.max = -1.0;
    for (int i = 0; i < grid_points; ++i) {
        const double th = static_cast<double>(i) / grid_points;
        const double f = failure_probability(s, th);
        if (f > r.max) {
            r.max = f;
            r.argmax = th;
        }
        if (th <= 0.5) {
            r.curve.thetas.push_back(th);
            r.curve.probs.push_back(f);
        }
    }
    return r;
}

}  // namespace hlest
