// Test-only oracles, independent of the library's computation paths:
//   - exact big-integer binomials for the Z^2 closed form C(2j,j)^2/16^j
//   - dense transition-matrix powers over a ball
//   - brute-force path enumeration for small-n probabilities
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rangelab/graph.hpp"
#include "rangelab/vertex.hpp"

namespace oracles {

// minimal big unsigned integer: base 2^32 limbs, multiply/divide by small
struct BigUint {
    std::vector<std::uint32_t> limbs{0};

    static BigUint one() {
        BigUint b;
        b.limbs = {1};
        return b;
    }

    void mul_small(std::uint64_t m) {
        std::uint64_t carry = 0;
        for (auto& l : limbs) {
            std::uint64_t cur = static_cast<std::uint64_t>(l) * m + carry;
            l = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        while (carry) {
            limbs.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
    }

    void div_small(std::uint64_t d) {
        std::uint64_t rem = 0;
        for (std::size_t k = limbs.size(); k-- > 0;) {
            std::uint64_t cur = (rem << 32) | limbs[k];
            limbs[k] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        while (limbs.size() > 1 && limbs.back() == 0) limbs.pop_back();
    }

    // value as mantissa * 2^exp2
    double to_double_scaled(int& exp2) const {
        exp2 = 0;
        double val = 0.0;
        int bits = 0;
        for (std::size_t k = limbs.size(); k-- > 0;) {
            val = val * 4294967296.0 + limbs[k];
            bits += 32;
            if (bits > 96) {  // keep the top bits, track the rest in the exponent
                int shift = bits - 96;
                for (int s = 0; s < shift; ++s) val /= 2.0;
                exp2 += shift;
                bits = 96;
            }
        }
        return val;
    }
};

// C(2j, j) exactly, via the integral product C = prod_k (j+k)/k
inline BigUint central_binomial(int j) {
    BigUint c = BigUint::one();
    for (int k = 1; k <= j; ++k) {
        c.mul_small(static_cast<std::uint64_t>(j + k));
        c.div_small(static_cast<std::uint64_t>(k));
    }
    return c;
}

// p_{2j}(0,0) on Z^2 = (C(2j,j)/4^j)^2, computed from the exact integer
inline double z2_diagonal_exact(int j) {
    int e = 0;
    double m = central_binomial(j).to_double_scaled(e);
    double a = std::ldexp(m, e - 2 * j);  // C(2j,j)/4^j
    return a * a;
}

// dense transition-matrix power restricted to B(x, n): returns p_t(x, .)
// as a map over ball vertices, exact in double arithmetic
struct MatrixPower {
    rangelab::Ball ball;
    std::vector<std::vector<double>> rows;  // row-stochastic transition matrix

    MatrixPower(const rangelab::GraphSpec& g, const rangelab::Vertex& x, int n)
        : ball(g, x, n) {
        std::size_t m = ball.size();
        rows.assign(m, std::vector<double>(m, 0.0));
        for (std::size_t a = 0; a < m; ++a) {
            auto nb = g.neighbors(ball.vertices()[a]);
            for (int k = 0; k < nb.n; ++k) {
                std::int32_t b = ball.index_of(nb.v[k]);
                if (b >= 0) rows[a][static_cast<std::size_t>(b)] = 1.0 / nb.n;
            }
        }
    }

    // mu_t = delta_x P^t (valid while t <= ball radius)
    std::vector<double> distribution(int t) const {
        std::vector<double> mu(rows.size(), 0.0), next(rows.size(), 0.0);
        mu[0] = 1.0;
        for (int s = 0; s < t; ++s) {
            std::fill(next.begin(), next.end(), 0.0);
            for (std::size_t a = 0; a < rows.size(); ++a) {
                if (mu[a] == 0.0) continue;
                for (std::size_t b = 0; b < rows.size(); ++b)
                    if (rows[a][b] != 0.0) next[b] += mu[a] * rows[a][b];
            }
            mu.swap(next);
        }
        return mu;
    }
};

// sum over all length-n paths of fn(path) * P(path)
inline double enumerate_paths(const rangelab::GraphSpec& g, const rangelab::Vertex& x, int n,
                              const std::function<double(const std::vector<rangelab::Vertex>&)>& fn) {
    std::vector<rangelab::Vertex> path{x};
    double total = 0.0;
    std::function<void(double)> rec = [&](double prob) {
        if (static_cast<int>(path.size()) == n + 1) {
            total += prob * fn(path);
            return;
        }
        auto nb = g.neighbors(path.back());
        for (int k = 0; k < nb.n; ++k) {
            path.push_back(nb.v[k]);
            rec(prob / nb.n);
            path.pop_back();
        }
    };
    rec(1.0);
    return total;
}

}  // namespace oracles
