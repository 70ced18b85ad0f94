// Linear solves on finite vertex sets with absorption outside:
//
//   killed Green function  G_A(x,y) = E^x[ visits to y before exiting A ]
//   expected exit time     E^x[ T_{A^c} ]
//
// Both reduce to the SPD system (D - A_G|_A) u = rhs, where D carries the
// full graph degrees and A_G|_A is the adjacency restricted to A. Solved by
// conjugate gradient to a 1e-12 residual.
#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rangelab/errors.hpp"
#include "rangelab/graph.hpp"
#include "rangelab/vertex.hpp"

namespace rangelab {

struct KilledGreenTable {
    std::string graph;
    Vertex origin;
    std::vector<Vertex> domain;
    std::vector<double> values;  // G_A(x, domain[k])

    double at(const Vertex& y) const {
        for (std::size_t k = 0; k < domain.size(); ++k)
            if (domain[k] == y) return values[k];
        throw invalid_vertex_error("vertex " + to_string(y) + " not in the killed domain");
    }
};

namespace detail {

struct KilledSystem {
    std::vector<Vertex> verts;
    std::unordered_map<std::uint64_t, std::int32_t> index;
    std::vector<std::int32_t> row_offset;
    std::vector<std::int32_t> col;
    std::vector<double> deg;

    KilledSystem(const GraphSpec& g, const std::vector<Vertex>& domain) {
        verts = domain;
        index.reserve(domain.size() * 2);
        for (std::size_t k = 0; k < verts.size(); ++k) {
            if (!g.is_vertex(verts[k]))
                throw invalid_vertex_error("killed domain vertex " + to_string(verts[k]));
            if (!index.insert({encode(verts[k]), static_cast<std::int32_t>(k)}).second)
                throw malformed_input_error("duplicate vertex in killed domain");
        }
        row_offset.reserve(verts.size() + 1);
        row_offset.push_back(0);
        deg.reserve(verts.size());
        NeighborList nb;
        for (const Vertex& v : verts) {
            g.neighbors_into(v, nb);
            deg.push_back(static_cast<double>(nb.n));
            for (int k = 0; k < nb.n; ++k) {
                auto it = index.find(encode(nb.v[k]));
                if (it != index.end()) col.push_back(it->second);
            }
            row_offset.push_back(static_cast<std::int32_t>(col.size()));
        }
    }

    // y = (D - A) x
    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        for (std::size_t r = 0; r < verts.size(); ++r) {
            double acc = deg[r] * x[r];
            for (std::int32_t k = row_offset[r]; k < row_offset[r + 1]; ++k) acc -= x[col[k]];
            y[r] = acc;
        }
    }

    std::vector<double> solve(const std::vector<double>& rhs, double tol = 1e-12,
                              std::size_t max_iter = 200000) const {
        std::size_t n = verts.size();
        std::vector<double> x(n, 0.0), r = rhs, p = rhs, ap(n, 0.0);
        double rr = 0.0, bb = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rr += r[i] * r[i];
            bb += rhs[i] * rhs[i];
        }
        if (bb == 0.0) return x;
        double target = tol * tol * bb;
        for (std::size_t it = 0; it < max_iter && rr > target; ++it) {
            apply(p, ap);
            double pap = 0.0;
            for (std::size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
            double alpha = rr / pap;
            double rr_new = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
                rr_new += r[i] * r[i];
            }
            double beta = rr_new / rr;
            rr = rr_new;
            for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        }
        if (rr > target)
            throw resource_limit_error("killed solve failed to reach the residual target");
        return x;
    }
};

}  // namespace detail

// G_A(x, .) over a finite domain A containing x
inline KilledGreenTable killed_green(const GraphSpec& g, const std::vector<Vertex>& domain,
                                     const Vertex& x) {
    detail::KilledSystem sys(g, domain);
    auto it = sys.index.find(encode(x));
    if (it == sys.index.end())
        throw malformed_input_error("killed_green origin must lie inside the domain");
    std::vector<double> rhs(domain.size(), 0.0);
    rhs[it->second] = 1.0;
    auto u = sys.solve(rhs);
    KilledGreenTable out;
    out.graph = g.identity();
    out.origin = x;
    out.domain = sys.verts;
    out.values.resize(domain.size());
    for (std::size_t k = 0; k < domain.size(); ++k) out.values[k] = sys.deg[k] * u[k];
    return out;
}

inline KilledGreenTable killed_green_ball(const GraphSpec& g, const Vertex& x, int r,
                                          const ResourceGuards& guards = {}) {
    Ball ball(g, x, r, guards);
    return killed_green(g, ball.vertices(), x);
}

// E^y[T_{A^c}] for every y in A (the walk exits A at its first step outside)
inline std::vector<double> expected_exit_times(const GraphSpec& g,
                                               const std::vector<Vertex>& domain) {
    detail::KilledSystem sys(g, domain);
    std::vector<double> rhs(domain.size());
    for (std::size_t k = 0; k < domain.size(); ++k) rhs[k] = sys.deg[k];
    return sys.solve(rhs);
}

// E^x[T_{B(x,r)^c}]
inline double expected_exit_time(const GraphSpec& g, const Vertex& x, int r,
                                 const ResourceGuards& guards = {}) {
    if (r < 0) throw malformed_input_error("exit radius must be >= 0");
    if (r == 0) return 1.0;  // the first step leaves {x}
    Ball ball(g, x, r, guards);
    auto h = expected_exit_times(g, ball.vertices());
    // x is the BFS root, index 0
    return h[0];
}

}  // namespace rangelab
