// Seeded simulation of the simple random walk with streaming range,
// first-return and intersection statistics. Each step draws one uniform
// index into the canonical neighbor list, so a (seed, replica) pair fixes
// the trajectory bit-for-bit regardless of scheduling.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rangelab/dense_set.hpp"
#include "rangelab/errors.hpp"
#include "rangelab/graph.hpp"
#include "rangelab/rng.hpp"
#include "rangelab/vertex.hpp"

namespace rangelab {

inline Vertex random_step(const GraphSpec& g, const Vertex& v, RngStream& rng,
                          NeighborList& buf) {
    switch (g.kind()) {
        case GraphKind::square: {
            auto [di, dj] = detail::kSquareDeltas[rng.next_index(4)];
            return Vertex{v.i + di, v.j + dj, 0};
        }
        case GraphKind::king: {
            auto [di, dj] = detail::kKingDeltas[rng.next_index(8)];
            return Vertex{v.i + di, v.j + dj, 0};
        }
        case GraphKind::triangular: {
            auto [di, dj] = detail::kTriangularDeltas[rng.next_index(6)];
            return Vertex{v.i + di, v.j + dj, 0};
        }
        default: {
            g.neighbors_into(v, buf);
            return buf.v[rng.next_index(static_cast<std::uint32_t>(buf.n))];
        }
    }
}

struct WalkOptions {
    bool keep_positions = false;
    bool keep_range_series = false;
    std::uint64_t max_kept_steps = 10'000'000;  // horizon guard for retained paths
};

struct WalkTrace {
    std::string graph;
    Vertex start;
    std::uint64_t steps = 0;
    Vertex end;
    std::uint64_t range = 0;                     // R_n
    std::optional<std::uint64_t> first_return;   // min k >= 1 with S_k = start
    std::vector<Vertex> positions;               // S_0..S_n when kept
    std::vector<std::uint32_t> range_series;     // R_0..R_n when kept
    IdSet visited;
};

inline WalkTrace simulate(const GraphSpec& g, const Vertex& x, std::uint64_t n, RngStream stream,
                          const WalkOptions& opt = {}) {
    if (!g.is_vertex(x)) throw invalid_vertex_error("walk start " + to_string(x));
    if ((opt.keep_positions || opt.keep_range_series) && n > opt.max_kept_steps)
        throw resource_limit_error("retained trace exceeds the kept-steps guard");
    WalkTrace tr;
    tr.graph = g.identity();
    tr.start = x;
    tr.steps = n;
    tr.visited = IdSet(static_cast<std::size_t>(std::min<std::uint64_t>(n + 1, 1u << 22)));
    const std::uint64_t start_id = encode(x);
    tr.visited.insert(start_id);
    tr.range = 1;
    if (opt.keep_positions) {
        tr.positions.reserve(n + 1);
        tr.positions.push_back(x);
    }
    if (opt.keep_range_series) {
        tr.range_series.reserve(n + 1);
        tr.range_series.push_back(1);
    }
    Vertex v = x;
    NeighborList buf;
    for (std::uint64_t t = 1; t <= n; ++t) {
        v = random_step(g, v, stream, buf);
        std::uint64_t id = encode(v);
        if (tr.visited.insert(id)) ++tr.range;
        if (!tr.first_return && id == start_id) tr.first_return = t;
        if (opt.keep_positions) tr.positions.push_back(v);
        if (opt.keep_range_series) tr.range_series.push_back(static_cast<std::uint32_t>(tr.range));
    }
    tr.end = v;
    return tr;
}

// verifies R_n = 1 + sum_{i=0}^{n-1} 1{ S_i not in {S_{i+1},...,S_n} }
// exactly on the realized path
inline bool pathwise_last_exit_check(const WalkTrace& tr) {
    if (tr.positions.size() != tr.steps + 1)
        throw malformed_input_error("pathwise check needs the full position sequence");
    IdSet suffix(tr.positions.size());
    suffix.insert(encode(tr.positions.back()));
    std::uint64_t count = 0;
    for (std::size_t i = tr.positions.size() - 1; i-- > 0;) {
        std::uint64_t id = encode(tr.positions[i]);
        if (!suffix.contains(id)) ++count;
        suffix.insert(id);
    }
    return count + 1 == tr.range;
}

inline std::optional<std::uint64_t> first_return_time(const WalkTrace& tr) {
    return tr.first_return;
}

// I_n = |{S_0..S_n} cap {S_n..S_2n}| from one 2n-step walk
struct SelfIntersection {
    std::uint64_t value = 0;        // I_n
    std::uint64_t first_range = 0;  // R_n of the first half
    std::uint64_t second_range = 0;
};

inline SelfIntersection self_intersection(const GraphSpec& g, const Vertex& x, std::uint64_t n,
                                          RngStream stream) {
    IdSet first(static_cast<std::size_t>(std::min<std::uint64_t>(n + 1, 1u << 22)));
    IdSet second(static_cast<std::size_t>(std::min<std::uint64_t>(n + 1, 1u << 22)));
    Vertex v = x;
    NeighborList buf;
    first.insert(encode(x));
    for (std::uint64_t t = 1; t <= n; ++t) {
        v = random_step(g, v, stream, buf);
        first.insert(encode(v));
    }
    second.insert(encode(v));  // S_n belongs to both halves
    for (std::uint64_t t = 1; t <= n; ++t) {
        v = random_step(g, v, stream, buf);
        second.insert(encode(v));
    }
    SelfIntersection out;
    out.first_range = first.size();
    out.second_range = second.size();
    out.value = intersection_size(first, second);
    return out;
}

// J_n = |{S^1_0..S^1_n} cap {S^2_0..S^2_n}| for two independent walks
inline std::uint64_t two_walk_intersection(const GraphSpec& g, const Vertex& x, std::uint64_t n,
                                           RngStream s1, RngStream s2) {
    IdSet a(static_cast<std::size_t>(std::min<std::uint64_t>(n + 1, 1u << 22)));
    IdSet b(static_cast<std::size_t>(std::min<std::uint64_t>(n + 1, 1u << 22)));
    NeighborList buf;
    Vertex v = x;
    a.insert(encode(v));
    for (std::uint64_t t = 1; t <= n; ++t) {
        v = random_step(g, v, s1, buf);
        a.insert(encode(v));
    }
    v = x;
    b.insert(encode(v));
    for (std::uint64_t t = 1; t <= n; ++t) {
        v = random_step(g, v, s2, buf);
        b.insert(encode(v));
    }
    return intersection_size(a, b);
}

// streaming walk that reports (t, R_t, S_t) at each requested grid time
inline void walk_over_grid(const GraphSpec& g, const Vertex& x,
                           const std::vector<std::uint64_t>& grid, RngStream stream,
                           const std::function<void(std::uint64_t, std::uint64_t, Vertex)>& fn) {
    if (grid.empty()) return;
    std::uint64_t n = grid.back();
    IdSet visited(static_cast<std::size_t>(std::min<std::uint64_t>(n + 1, 1u << 22)));
    Vertex v = x;
    NeighborList buf;
    visited.insert(encode(v));
    std::uint64_t range = 1;
    std::size_t gi = 0;
    for (std::uint64_t t = 0; t <= n; ++t) {
        if (t > 0) {
            v = random_step(g, v, stream, buf);
            if (visited.insert(encode(v))) ++range;
        }
        while (gi < grid.size() && grid[gi] == t) {
            fn(t, range, v);
            ++gi;
        }
    }
}

}  // namespace rangelab
