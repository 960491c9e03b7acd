#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "numerics.hpp"

namespace hlest {

using cplx = std::complex<double>;

template <class T>
struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<T> entries;  // row-major

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : dim(n), entries(n * n, T{}) {}

    T& operator()(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
};

using SymMatrix = DenseMatrix<double>;
using HermMatrix = DenseMatrix<cplx>;

struct EigenSystem {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i]
};

inline double frobenius(const SymMatrix& a) {
    double s = 0.0;
    for (double x : a.entries) s += x * x;
    return std::sqrt(s);
}

inline double max_asymmetry(const SymMatrix& a) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = i + 1; j < a.dim; ++j) d = std::max(d, std::abs(a(i, j) - a(j, i)));
    return d;
}

inline double max_antihermiticity(const HermMatrix& h) {
    double d = 0.0;
    for (std::size_t i = 0; i < h.dim; ++i)
        for (std::size_t j = i; j < h.dim; ++j) d = std::max(d, std::abs(h(i, j) - std::conj(h(j, i))));
    return d;
}

// Cyclic Jacobi with threshold sweeps.
inline EigenSystem jacobi_eigen(const SymMatrix& input, bool want_vectors = true) {
    const std::size_t n = input.dim;
    require(n >= 1, "jacobi_eigen: empty matrix");
    require(max_asymmetry(input) <= 1e-12, "jacobi_eigen: matrix is not symmetric");

    SymMatrix a = input;
    SymMatrix v = want_vectors ? SymMatrix::identity(n) : SymMatrix();
    const double norm = frobenius(a);
    const double tol = 1e-14 * norm;

    auto off = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100; ++sweep) {
        const double o = off();
        if (o <= tol || o == 0.0) break;
        // Early sweeps skip rotations on elements that are already small.
        const double thresh = sweep < 3 ? 0.2 * o / static_cast<double>(n * n) : 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                const double g = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
                    std::abs(a(q, q)) + g == std::abs(a(q, q))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                if (std::abs(apq) <= thresh || apq == 0.0) continue;
                const double diff = a(q, q) - a(p, p);
                double t;
                if (std::abs(diff) + g == std::abs(diff)) {
                    t = apq / diff;
                } else {
                    const double theta = 0.5 * diff / apq;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p), arq = a(r, q);
                    const double np = arp - s * (arq + tau * arp);
                    const double nq = arq + s * (arp - tau * arq);
                    a(r, p) = a(p, r) = np;
                    a(r, q) = a(q, r) = nq;
                }
                if (want_vectors) {
                    for (std::size_t r = 0; r < n; ++r) {
                        const double vrp = v(r, p), vrq = v(r, q);
                        v(r, p) = vrp - s * (vrq + tau * vrp);
                        v(r, q) = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    EigenSystem out;
    out.values.reserve(n);
    for (std::size_t i : order) out.values.push_back(a(i, i));
    if (want_vectors) {
        out.vectors.assign(n, std::vector<double>(n));
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) out.vectors[c][r] = v(r, order[c]);
    }
    return out;
}

// Eigenvalues only: Householder reduction to tridiagonal form, then implicit QL.
// Roughly n^3 cheaper in the constant than Jacobi; used for long theta sweeps.
inline std::vector<double> symmetric_eigenvalues(const SymMatrix& input) {
    const std::size_t n = input.dim;
    require(n >= 1, "symmetric_eigenvalues: empty matrix");
    require(max_asymmetry(input) <= 1e-12, "symmetric_eigenvalues: matrix is not symmetric");
    SymMatrix a = input;
    std::vector<double> d(n), e(n, 0.0);

    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = a(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);

    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                require(++iter < 200, "symmetric_eigenvalues: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                std::size_t i = m;
                bool underflow = false;
                while (i-- > l) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = (r = std::hypot(f, g));
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    d[i + 1] = g + (p = s * r);
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

// [[Re H, -Im H], [Im H, Re H]]; each eigenvalue of H appears twice.
inline SymMatrix real_embedding(const HermMatrix& h) {
    const std::size_t n = h.dim;
    SymMatrix r(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = h(i, j).real(), im = h(i, j).imag();
            r(i, j) = re;
            r(i, j + n) = -im;
            r(i + n, j) = im;
            r(i + n, j + n) = re;
        }
    // Symmetrize away rounding-level Hermiticity defects.
    for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = i + 1; j < 2 * n; ++j) r(i, j) = r(j, i) = 0.5 * (r(i, j) + r(j, i));
    return r;
}

inline double spectral_norm(const HermMatrix& h) {
    require(h.dim >= 1, "spectral_norm: empty matrix");
    require(max_antihermiticity(h) <= 1e-12, "spectral_norm: matrix is not Hermitian");
    const auto ev = jacobi_eigen(real_embedding(h), false).values;
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

}  // namespace hlest
