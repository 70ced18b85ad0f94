// Exact expected range E^x[R_n] by three independent routes, plus the
// far-target hitting-probability scan.
//
//   enumeration   walk every path of length n (deg^n budget)
//   per-target    E[R_n] = 1 + sum_{y != x} P^x(T_y <= n), absorbing kernels
//   renewal       E[R_n] = sum_{m<=n} q(m) on vertex-transitive graphs
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rangelab/errors.hpp"
#include "rangelab/graph.hpp"
#include "rangelab/heat_kernel.hpp"
#include "rangelab/series.hpp"
#include "rangelab/z2_series.hpp"

namespace rangelab {

enum class RangeMethod { enumeration, per_target, transitive_renewal };

namespace detail {

struct EnumState {
    const GraphSpec* g;
    int horizon;
    double sum = 0.0;
    std::array<std::uint64_t, 24> visited{};
    int nvisited = 0;

    bool contains(std::uint64_t id) const {
        for (int k = 0; k < nvisited; ++k)
            if (visited[k] == id) return true;
        return false;
    }

    void dfs(const Vertex& v, int depth, double prob, int range) {
        if (depth == horizon) {
            sum += prob * range;
            return;
        }
        NeighborList nb = g->neighbors(v);
        double p = prob / nb.n;
        for (int k = 0; k < nb.n; ++k) {
            const Vertex& w = nb.v[k];
            std::uint64_t id = encode(w);
            bool fresh = !contains(id);
            if (fresh) visited[nvisited++] = id;
            dfs(w, depth + 1, p, range + (fresh ? 1 : 0));
            if (fresh) --nvisited;
        }
    }
};

}  // namespace detail

inline double expected_range_exact(const GraphSpec& g, const Vertex& x, int n, RangeMethod method,
                                   const ResourceGuards& guards = {}) {
    if (n < 0) throw malformed_input_error("range horizon must be >= 0");
    switch (method) {
        case RangeMethod::enumeration: {
            double paths = std::pow(static_cast<double>(g.max_degree()), n);
            if (paths > 4.0e8)
                throw resource_limit_error("enumeration budget exceeded: deg^n too large");
            detail::EnumState st;
            st.g = &g;
            st.horizon = n;
            st.visited[st.nvisited++] = encode(x);
            st.dfs(x, 0, 1.0, 1);
            return st.sum;
        }
        case RangeMethod::per_target: {
            KernelDomain dom(g, x, n, guards);
            long double acc = 1.0L;
            for (std::size_t c = 0; c < dom.n_cells(); ++c) {
                if (dom.distance_of_cell(static_cast<std::int32_t>(c)) <= 0) continue;
                Vertex y = dom.vertex_at(static_cast<std::int32_t>(c));
                HeatKernelRun run(dom);
                run.absorb_at(y);
                for (int t = 0; t < n; ++t) run.step();
                acc += run.absorbed();
            }
            return static_cast<double>(acc);
        }
        case RangeMethod::transitive_renewal: {
            if (!g.vertex_transitive())
                throw resource_limit_error(
                    "transitive-renewal requires a vertex-transitive graph");
            ReturnSeries rs = return_series(g, x, n, guards);
            SurvivalSeries sv = survival(first_return(rs));
            double acc = 0.0;
            for (int m = 0; m <= n; ++m) acc += sv.q[m];
            return acc;
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Far-target hitting scan: max over sampled y with d(x,y) >= (n/(log n)^4)^(1/2)
// of P^x(T_y <= n) * log n / loglog n.

struct HitBoundSample {
    Vertex target;
    int distance = 0;
    double probability = 0.0;
};

struct HitBoundResult {
    double realized_constant = 0.0;
    int critical_radius = 1;
    std::vector<HitBoundSample> samples;
};

inline HitBoundResult hit_bound_check(const GraphSpec& g, const Vertex& x, int n,
                                      double radius_scale = 1.0,
                                      const ResourceGuards& guards = {}) {
    if (n < 16) throw malformed_input_error("hitting scan needs n >= 16");
    double ln = std::log(static_cast<double>(n));
    double crit = radius_scale * std::sqrt(static_cast<double>(n) / std::pow(ln, 4.0));
    int rc = std::max(1, static_cast<int>(std::ceil(crit)));

    HitBoundResult out;
    out.critical_radius = rc;
    const bool square_closed_form = g.kind() == GraphKind::square;

    for (int r = rc; r <= n; r *= 2) {
        // a few directions on the L1 sphere of radius r
        std::vector<std::pair<int, int>> dirs = {
            {r, 0}, {0, r}, {(r + 1) / 2, r / 2}, {-r, 0}};
        for (auto [a, b] : dirs) {
            Vertex y{x.i + a, x.j + b, 0};
            if (!g.is_vertex(y)) continue;
            bool seen = false;
            for (const auto& s : out.samples) seen = seen || s.target == y;
            if (seen) continue;
            double prob;
            if (square_closed_form)
                prob = z2::hitting_series(n, a, b).back();
            else
                prob = hitting_probability(g, x, y, n, HitConvention::first_visit, guards);
            HitBoundSample s;
            s.target = y;
            s.distance = static_cast<int>(
                closed_form_distance(g, x, y).value_or(std::abs(a) + std::abs(b)));
            s.probability = prob;
            out.samples.push_back(s);
        }
        if (r > n / 2) break;
    }
    double lln = std::log(ln);
    for (const auto& s : out.samples)
        out.realized_constant = std::max(out.realized_constant, s.probability * ln / lln);
    return out;
}

}  // namespace rangelab
