// Iterative radix-2 complex FFT, used for large renewal convolutions.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rangelab {

inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * 3.14159265358979323846 / static_cast<double>(len) * (inverse ? -1 : 1);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

// c[t] = sum_a x[a] y[t-a], truncated to max_len entries
inline std::vector<double> convolve(const std::vector<double>& x, const std::vector<double>& y,
                                    std::size_t max_len) {
    if (x.empty() || y.empty()) return {};
    std::size_t full = x.size() + y.size() - 1;
    std::size_t out_len = std::min(full, max_len);
    if (static_cast<double>(x.size()) * static_cast<double>(y.size()) < 65536.0) {
        std::vector<double> c(out_len, 0.0);
        for (std::size_t a = 0; a < x.size(); ++a) {
            if (x[a] == 0.0) continue;
            std::size_t bmax = std::min(y.size(), out_len > a ? out_len - a : 0);
            for (std::size_t b = 0; b < bmax; ++b) c[a + b] += x[a] * y[b];
        }
        return c;
    }
    std::size_t sz = 1;
    while (sz < full) sz <<= 1;
    std::vector<std::complex<double>> fa(sz), fb(sz);
    for (std::size_t i = 0; i < x.size(); ++i) fa[i] = x[i];
    for (std::size_t i = 0; i < y.size(); ++i) fb[i] = y[i];
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (std::size_t i = 0; i < sz; ++i) fa[i] *= fb[i];
    fft_inplace(fa, true);
    std::vector<double> c(out_len);
    for (std::size_t i = 0; i < out_len; ++i) c[i] = fa[i].real();
    return c;
}

}  // namespace rangelab
