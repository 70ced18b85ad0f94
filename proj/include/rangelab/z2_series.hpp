// Closed-form transition probabilities for the simple random walk on Z^2.
// Under the 45-degree rotation (i+j, i-j) the two components are independent
// one-dimensional simple walks, so
//
//   p_n(0,(a,b)) = P(U_n = a+b) * P(V_n = a-b)
//   p_{2j}(0,0)  = (C(2j,j)/4^j)^2
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rangelab/errors.hpp"

namespace rangelab {
namespace z2 {

// a_j = C(2j,j)/4^j via the stable ratio recurrence
inline double central_binomial_scaled(std::int64_t j) {
    double a = 1.0;
    for (std::int64_t k = 1; k <= j; ++k) a *= (2.0 * k - 1.0) / (2.0 * k);
    return a;
}

// diagonal series p_k(0,0) for k = 0..n
inline std::vector<double> diagonal_series(std::size_t n) {
    std::vector<double> p(n + 1, 0.0);
    double a = 1.0;
    p[0] = 1.0;
    for (std::size_t j = 1; 2 * j <= n; ++j) {
        a *= (2.0 * j - 1.0) / (2.0 * j);
        p[2 * j] = a * a;
    }
    return p;
}

// P(S_n = s) for the one-dimensional simple walk
inline double walk1d_pmf(std::int64_t n, std::int64_t s) {
    if (s < -n || s > n) return 0.0;
    if (((n + s) & 1) != 0) return 0.0;
    std::int64_t k = (n + s) / 2;
    double lg = std::lgamma(double(n + 1)) - std::lgamma(double(k + 1)) -
                std::lgamma(double(n - k + 1)) - double(n) * std::log(2.0);
    return std::exp(lg);
}

inline double transition(std::int64_t n, std::int64_t a, std::int64_t b) {
    return walk1d_pmf(n, a + b) * walk1d_pmf(n, a - b);
}

// off-diagonal series p_k(0,(a,b)) for k = 0..n
inline std::vector<double> transition_series(std::size_t n, std::int64_t a, std::int64_t b) {
    std::vector<double> p(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) p[k] = transition(static_cast<std::int64_t>(k), a, b);
    return p;
}

// P^0(T_y <= m) for m = 0..n via first-passage deconvolution:
//   p_k(0,y) = sum_{j<=k} f_j p_{k-j}(y,y),  y != 0
inline std::vector<double> hitting_series(std::size_t n, std::int64_t a, std::int64_t b) {
    if (a == 0 && b == 0)
        throw malformed_input_error("hitting_series needs a target distinct from the origin");
    std::vector<double> pxy = transition_series(n, a, b);
    std::vector<double> pyy = diagonal_series(n);
    std::vector<double> f(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        double acc = pxy[k];
        for (std::size_t j = 1; j < k; ++j)
            if (f[j] != 0.0 && pyy[k - j] != 0.0) acc -= f[j] * pyy[k - j];
        f[k] = acc < 0.0 ? 0.0 : acc;
    }
    std::vector<double> cum(n + 1, 0.0);
    double s = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        s += f[k];
        cum[k] = s > 1.0 ? 1.0 : s;
    }
    return cum;
}

}  // namespace z2
}  // namespace rangelab
