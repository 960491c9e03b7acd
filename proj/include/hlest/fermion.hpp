#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "numerics.hpp"
#include "probe.hpp"

namespace hlest {

enum class RdmKind { Re, Im, Diag };

inline std::string kind_name(RdmKind k) {
    switch (k) {
        case RdmKind::Re: return "Re";
        case RdmKind::Im: return "Im";
        case RdmKind::Diag: return "Diag";
    }
    return "?";
}

struct RdmLabel {
    std::vector<int> p_vec;
    std::vector<int> q_vec;
    RdmKind kind = RdmKind::Diag;
};

namespace detail {
inline int l1(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

// Pairs with ||q||_1 < ||p||_1 are kept; equal 1-norms fall back to lexicographic order.
inline bool ordered_pair(const std::vector<int>& p, const std::vector<int>& q) {
    const int a = l1(p), b = l1(q);
    if (b != a) return b < a;
    return q < p;
}

inline bool strictly_increasing(const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1]) return false;
    return true;
}
}  // namespace detail

inline void validate_label(int N, const RdmLabel& L) {
    require(!L.p_vec.empty() && L.p_vec.size() == L.q_vec.size(), "RdmLabel: p and q must have equal length k >= 1");
    require(detail::strictly_increasing(L.p_vec) && detail::strictly_increasing(L.q_vec),
            "RdmLabel: mode tuples must be strictly increasing (index clash)");
    for (int i : L.p_vec) require(i >= 0 && i < N, "RdmLabel: mode index out of range");
    for (int i : L.q_vec) require(i >= 0 && i < N, "RdmLabel: mode index out of range");
    if (L.kind == RdmKind::Diag)
        require(L.p_vec == L.q_vec, "RdmLabel: Diag requires p = q");
    else
        require(detail::ordered_pair(L.p_vec, L.q_vec), "RdmLabel: Re/Im require ||q||_1 < ||p||_1");
}

inline std::vector<std::vector<int>> mode_tuples(int N, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < N; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// All C(N,k)^2 labels: C(N,k) diagonal ones plus Re and Im for each unordered pair.
inline std::vector<RdmLabel> rdm_labels(int N, int k) {
    const auto tuples = mode_tuples(N, k);
    std::vector<RdmLabel> out;
    for (const auto& p : tuples) out.push_back({p, p, RdmKind::Diag});
    for (const auto& p : tuples)
        for (const auto& q : tuples)
            if (p != q && detail::ordered_pair(p, q)) {
                out.push_back({p, q, RdmKind::Re});
                out.push_back({p, q, RdmKind::Im});
            }
    return out;
}

// C = A B, skipping zero entries of A; ladder products have one nonzero per row.
inline HermMatrix multiply(const HermMatrix& A, const HermMatrix& B) {
    const std::size_t n = A.dim;
    require(B.dim == n, "multiply: dimension mismatch");
    HermMatrix C(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            const cplx a = A(i, l);
            if (a == cplx(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const cplx b = B(l, j);
                if (b != cplx(0.0)) C(i, j) += a * b;
            }
        }
    return C;
}

inline HermMatrix adjoint(const HermMatrix& A) {
    HermMatrix r(A.dim);
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j) r(j, i) = std::conj(A(i, j));
    return r;
}

inline HermMatrix kron(const HermMatrix& A, const HermMatrix& B) {
    HermMatrix r(A.dim * B.dim);
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j)
            for (std::size_t k = 0; k < B.dim; ++k)
                for (std::size_t l = 0; l < B.dim; ++l) r(i * B.dim + k, j * B.dim + l) = A(i, j) * B(k, l);
    return r;
}

constexpr int kMaxDenseModes = 8;

// Annihilator a_j = Z^{(0)} ... Z^{(j-1)} sigma^- I ... in the occupation basis.
// Mode j is bit j of the basis index, so the Kronecker factors run from mode N-1 down.
inline HermMatrix annihilator(int N, int j) {
    require(N >= 1 && N <= kMaxDenseModes, "annihilator: N must lie in [1, 8]");
    require(j >= 0 && j < N, "annihilator: mode out of range");
    HermMatrix id = HermMatrix::identity(2), z(2), lower(2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    lower(0, 1) = 1.0;  // |0><1|
    HermMatrix r = HermMatrix::identity(1);
    for (int m = N - 1; m >= 0; --m) r = kron(r, m < j ? z : (m == j ? lower : id));
    return r;
}

inline HermMatrix creator(int N, int j) { return adjoint(annihilator(N, j)); }

// A^p_q = a+_{p1} ... a+_{pk} a_{q1} ... a_{qk}
inline HermMatrix ladder_product(int N, const std::vector<int>& p, const std::vector<int>& q) {
    HermMatrix r = HermMatrix::identity(std::size_t{1} << N);
    for (int i : p) r = multiply(r, creator(N, i));
    for (int i : q) r = multiply(r, annihilator(N, i));
    return r;
}

// Re -> A + A^dagger, Im -> (A - A^dagger)/i, Diag -> A^p_p.
inline HermMatrix jw_operator(int N, const RdmLabel& label) {
    require(N >= 1 && N <= kMaxDenseModes, "jw_operator: N must lie in [1, 8]");
    validate_label(N, label);
    const HermMatrix A = ladder_product(N, label.p_vec, label.q_vec);
    if (label.kind == RdmKind::Diag) return A;
    const HermMatrix Ad = adjoint(A);
    HermMatrix r(A.dim);
    const cplx minus_i(0.0, -1.0);
    for (std::size_t i = 0; i < r.entries.size(); ++i)
        r.entries[i] = label.kind == RdmKind::Re ? A.entries[i] + Ad.entries[i]
                                                 : minus_i * (A.entries[i] - Ad.entries[i]);
    return r;
}

inline HermMatrix particle_projector(int N, int eta) {
    require(N >= 1 && N <= 16, "particle_projector: N must lie in [1, 16]");
    require(eta >= 0 && eta <= N, "particle_projector: need 0 <= eta <= N");
    HermMatrix P(std::size_t{1} << N);
    for (std::size_t i = 0; i < P.dim; ++i)
        if (std::popcount(i) == eta) P(i, i) = 1.0;
    return P;
}

inline std::vector<std::size_t> sector_indices(int N, int eta) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < (std::size_t{1} << N); ++i)
        if (std::popcount(i) == eta) idx.push_back(i);
    return idx;
}

inline HermMatrix compress(const HermMatrix& A, const std::vector<std::size_t>& idx) {
    HermMatrix r(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = A(idx[i], idx[j]);
    return r;
}

// Sum of O^2 over every k-RDM observable, on the full Fock space.
inline HermMatrix rdm_square_sum(int N, int k) {
    require(N >= 1 && N <= kMaxDenseModes, "rdm_square_sum: N must lie in [1, 8]");
    require(k >= 1 && k <= N, "rdm_square_sum: need 1 <= k <= N");
    HermMatrix S(std::size_t{1} << N);
    for (const auto& L : rdm_labels(N, k)) {
        const HermMatrix O = jw_operator(N, L);
        const HermMatrix O2 = multiply(O, O);
        for (std::size_t i = 0; i < S.entries.size(); ++i) S.entries[i] += O2.entries[i];
    }
    return S;
}

// C(N,eta)^{-1} [C(N,k)C(N-k,eta-k) + 2 sum_{m=0}^{k-1} C(N,k)C(N-k,k-m)C(k,m)C(N-2k+m,eta-k)],
// with m the overlap |p & q|; the m = k (p = q) term is the diagonal one and is counted once.
inline double closed_coefficient(int N, int eta, int k) {
    BigInt s = binomial_exact(N, k) * binomial_exact(N - k, eta - k);
    for (int m = 0; m < k; ++m)
        s += 2 * binomial_exact(N, k) * binomial_exact(N - k, k - m) * binomial_exact(k, m) *
             binomial_exact(N - 2 * k + m, eta - k);
    return s.convert_to<double>() / binomial_exact(N, eta).convert_to<double>();
}

struct SectorNormReport {
    double brute_norm = 0.0;
    double closed_coefficient = 0.0;
    double upper_bound = 0.0;         // 2 C(eta,k) C(N-eta+k,k)
    double identity_deviation = 0.0;  // max |block - closed * I|
    double commutator_norm = 0.0;     // max entry of S coupling different particle numbers
};

inline SectorNormReport sector_norm_report(const HermMatrix& square_sum, int N, int eta, int k) {
    require(k >= 1 && eta >= k && eta <= N - k, "sector_norm_report: need k <= eta <= N - k");
    require(square_sum.dim == (std::size_t{1} << N), "sector_norm_report: dimension mismatch");
    SectorNormReport r;
    const auto block = compress(square_sum, sector_indices(N, eta));
    r.brute_norm = spectral_norm(block);
    r.closed_coefficient = closed_coefficient(N, eta, k);
    r.upper_bound = 2.0 * (binomial_exact(eta, k) * binomial_exact(N - eta + k, k)).convert_to<double>();
    for (std::size_t i = 0; i < block.dim; ++i)
        for (std::size_t j = 0; j < block.dim; ++j)
            r.identity_deviation =
                std::max(r.identity_deviation, std::abs(block(i, j) - (i == j ? r.closed_coefficient : 0.0)));
    for (std::size_t i = 0; i < square_sum.dim; ++i)
        for (std::size_t j = 0; j < square_sum.dim; ++j)
            if (std::popcount(i) != std::popcount(j))
                r.commutator_norm = std::max(r.commutator_norm, std::abs(square_sum(i, j)));
    return r;
}

inline SectorNormReport sector_norm_report(int N, int eta, int k) {
    require(N >= 1 && N <= kMaxDenseModes, "sector_norm_report: N must lie in [1, 8]");
    require(k >= 1 && eta >= k && eta <= N - k, "sector_norm_report: need k <= eta <= N - k");
    return sector_norm_report(rdm_square_sum(N, k), N, eta, k);
}

struct IdentityCheck {
    BigInt lhs_numerator;    // sum_m C(N,k)C(N-k,k-m)C(k,m)C(N-2k+m,eta-k)
    BigInt lhs_denominator;  // C(N,eta)
    BigInt rhs;              // C(eta,k)C(N-eta+k,k)

    bool holds() const { return lhs_numerator == rhs * lhs_denominator; }
};

inline IdentityCheck identity_check(int N, int eta, int k) {
    require(N >= 0 && N <= 200, "identity_check: N must lie in [0, 200]");
    require(k >= 0 && k <= eta && eta + k <= N, "identity_check: need 0 <= k <= eta and eta + k <= N");
    IdentityCheck c;
    for (int m = 0; m <= k; ++m)
        c.lhs_numerator += binomial_exact(N, k) * binomial_exact(N - k, k - m) * binomial_exact(k, m) *
                           binomial_exact(N - 2 * k + m, eta - k);
    c.lhs_denominator = binomial_exact(N, eta);
    c.rhs = binomial_exact(eta, k) * binomial_exact(N - eta + k, k);
    return c;
}

// Norms of Pi sum_j 2X_j O_j Pi with X_j i.i.d. on the probe grid, Pr[X = x_mu] = c_mu^2.
// Draws come from std::mt19937_64(seed), one 53-bit uniform per coefficient, observables
// in rdm_labels order, trials in sequence.
inline std::vector<double> coefficient_norm_samples(int N, int eta, int k, const ProbeState& probe, int trials,
                                                    std::uint64_t seed) {
    require(N >= 1 && N <= 6, "coefficient_norm_samples: N must lie in [1, 6]");
    require(k >= 1 && eta >= k && eta <= N - k, "coefficient_norm_samples: need k <= eta <= N - k");
    require(trials >= 1, "coefficient_norm_samples: trials must be >= 1");
    require(probe.p >= 1 && probe.size() == (std::size_t{1} << probe.p), "coefficient_norm_samples: bad probe");

    const auto idx = sector_indices(N, eta);
    std::vector<HermMatrix> blocks;
    for (const auto& L : rdm_labels(N, k)) blocks.push_back(compress(jw_operator(N, L), idx));

    std::vector<double> cdf(probe.size());
    double acc = 0.0;
    for (std::size_t mu = 0; mu < probe.size(); ++mu) cdf[mu] = (acc += probe.amplitudes[mu] * probe.amplitudes[mu]);
    auto draw = [&](std::mt19937_64& g) {
        const double u = static_cast<double>(g() >> 11) * 0x1.0p-53 * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t mu = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
        return 2.0 * grid_point(probe.p, mu);
    };

    std::mt19937_64 gen(seed);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        HermMatrix sum(idx.size());
        for (const auto& B : blocks) {
            const double x = draw(gen);
            for (std::size_t i = 0; i < sum.entries.size(); ++i) sum.entries[i] += x * B.entries[i];
        }
        out.push_back(spectral_norm(sum));
    }
    return out;
}

inline double exceedance_rate(const std::vector<double>& norms, double threshold) {
    require(!norms.empty(), "exceedance_rate: no samples");
    std::size_t c = 0;
    for (double v : norms)
        if (v > threshold) ++c;
    return static_cast<double>(c) / static_cast<double>(norms.size());
}

inline double random_coefficient_norm_tail(int N, int eta, int k, const ProbeState& probe, int trials,
                                           std::uint64_t seed, double threshold) {
    require(trials >= 100, "random_coefficient_norm_tail: trials must be >= 100");
    return exceedance_rate(coefficient_norm_samples(N, eta, k, probe, trials, seed), threshold);
}

}  // namespace hlest
