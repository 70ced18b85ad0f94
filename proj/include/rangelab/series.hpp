// Return / first-return / survival series and the renewal identities tying
// them together:
//
//   f_n = p_n - sum_{k=1}^{n-1} f_k p_{n-k}        (first return from returns)
//   q_m = 1 - sum_{k<=m} f_k                        (survival)
//   sum_{k=0}^m p_k q_{m-k} = 1                     (last-exit identity)
//   E[R_n] = sum_{m=0}^n q_m                        (vertex-transitive range)
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rangelab/errors.hpp"
#include "rangelab/fft.hpp"
#include "rangelab/vertex.hpp"

namespace rangelab {

struct ReturnSeries {
    std::string graph;
    Vertex origin;
    std::vector<double> p;  // p[k] = p_k(x,x), k = 0..n
};

struct FirstReturnDistribution {
    std::vector<double> f;       // f[k] = P^x(T_x = k), f[0] = 0
    std::size_t clipped = 0;     // negative round-off values clipped to zero
    double worst_negative = 0.0; // most negative value seen before clipping
};

struct SurvivalSeries {
    std::vector<double> q;  // q[m] = P^x(T_x > m)
};

inline FirstReturnDistribution first_return(const ReturnSeries& series) {
    const auto& p = series.p;
    if (p.empty() || p[0] != 1.0)
        throw malformed_input_error("return series must start with p_0 = 1");
    FirstReturnDistribution out;
    out.f.assign(p.size(), 0.0);
    for (std::size_t n = 1; n < p.size(); ++n) {
        double acc = p[n];
        for (std::size_t k = 1; k < n; ++k) acc -= out.f[k] * p[n - k];
        if (acc < 0.0) {
            out.worst_negative = std::min(out.worst_negative, acc);
            ++out.clipped;
            acc = 0.0;
        }
        out.f[n] = acc;
    }
    return out;
}

inline SurvivalSeries survival(const FirstReturnDistribution& fr) {
    SurvivalSeries out;
    out.q.assign(fr.f.size(), 1.0);
    double cum = 0.0;
    for (std::size_t m = 1; m < fr.f.size(); ++m) {
        cum += fr.f[m];
        out.q[m] = 1.0 - cum;
        if (out.q[m] < 0.0) out.q[m] = 0.0;
    }
    return out;
}

// max_{m<=n} |sum_{k=0}^m p_k q_{m-k} - 1|
inline double last_exit_identity_check(const ReturnSeries& series, const SurvivalSeries& sv,
                                       std::size_t n) {
    if (series.p.size() <= n || sv.q.size() <= n)
        throw malformed_input_error("series shorter than requested horizon");
    double worst = 0.0;
    for (std::size_t m = 0; m <= n; ++m) {
        long double acc = 0.0L;
        for (std::size_t k = 0; k <= m; ++k) acc += (long double)series.p[k] * sv.q[m - k];
        worst = std::max(worst, std::fabs(static_cast<double>(acc - 1.0L)));
    }
    return worst;
}

// max_{n} |p_n - sum_{k=1}^n f_k p_{n-k}|, a consistency check on the recursion
inline double renewal_reconstruction_residual(const ReturnSeries& series,
                                              const FirstReturnDistribution& fr) {
    double worst = 0.0;
    for (std::size_t n = 1; n < series.p.size(); ++n) {
        long double acc = 0.0L;
        for (std::size_t k = 1; k <= n; ++k) acc += (long double)fr.f[k] * series.p[n - k];
        worst = std::max(worst, std::fabs(static_cast<double>(acc - (long double)series.p[n])));
    }
    return worst;
}

namespace detail {

// divide-and-conquer renewal inversion: finalizes q[l..r) given that acc[m]
// already holds the contributions of q[0..l)
inline void survival_cdq(const std::vector<double>& p, std::vector<double>& q,
                         std::vector<double>& acc, std::size_t l, std::size_t r) {
    if (r - l == 1) {
        q[l] = 1.0 - acc[l];
        return;
    }
    std::size_t mid = (l + r) / 2;
    survival_cdq(p, q, acc, l, mid);
    // push q[l..mid) * p[1..r-l) into acc[mid..r)
    std::size_t seg = r - l;
    if (seg <= 256) {
        for (std::size_t j = l; j < mid; ++j) {
            double qj = q[j];
            for (std::size_t m = std::max(mid, j + 1); m < r; ++m) acc[m] += qj * p[m - j];
        }
    } else {
        std::vector<double> a(q.begin() + l, q.begin() + mid);
        std::vector<double> b(p.begin() + 1, p.begin() + std::min(p.size(), seg));
        auto c = convolve(a, b, seg - 1);
        for (std::size_t t = mid - l - 1; t < c.size(); ++t) acc[l + 1 + t] += c[t];
    }
    survival_cdq(p, q, acc, mid, r);
}

}  // namespace detail

// survival series directly from a return series via the renewal identity;
// O(n log^2 n), needed for horizons where the f-recursion is too slow
inline SurvivalSeries survival_from_returns(const std::vector<double>& p) {
    if (p.empty() || p[0] != 1.0)
        throw malformed_input_error("return series must start with p_0 = 1");
    SurvivalSeries out;
    out.q.assign(p.size(), 0.0);
    std::vector<double> acc(p.size(), 0.0);
    detail::survival_cdq(p, out.q, acc, 0, p.size());
    return out;
}

// E[R_n] for n = 0..N from a survival series on a vertex-transitive graph
inline std::vector<double> expected_range_from_survival(const SurvivalSeries& sv) {
    std::vector<double> er(sv.q.size());
    double acc = 0.0;
    for (std::size_t m = 0; m < sv.q.size(); ++m) {
        acc += sv.q[m];
        er[m] = acc;
    }
    return er;
}

}  // namespace rangelab
