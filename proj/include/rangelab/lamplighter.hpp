// Switch-walk-switch random walk on {0,1} wr G: a walker on G carrying a
// finite set of lit lamps. Distances on the wreath product are bracketed
// (certified lower/upper bounds); an exact BFS oracle over small base
// graphs validates the bracket.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "rangelab/dense_set.hpp"
#include "rangelab/errors.hpp"
#include "rangelab/graph.hpp"
#include "rangelab/rng.hpp"
#include "rangelab/walk.hpp"

namespace rangelab {

// ---------------------------------------------------------------------------
// SWS walk on an infinite base graph

struct WreathState {
    Vertex walker;
    std::unordered_map<std::uint64_t, bool> lamps;  // touched lamps and their state

    explicit WreathState(const Vertex& start = Vertex{0, 0, 0}) : walker(start) {}

    std::uint64_t lit_count() const {
        std::uint64_t c = 0;
        for (const auto& [id, on] : lamps) c += on ? 1 : 0;
        return c;
    }

    std::vector<Vertex> lit_lamps() const {
        std::vector<Vertex> out;
        for (const auto& [id, on] : lamps)
            if (on) out.push_back(decode(id));
        std::sort(out.begin(), out.end());
        return out;
    }
};

// randomize the current lamp, move the walker, randomize the new lamp
inline void sws_step(WreathState& st, const GraphSpec& g, RngStream& rng, NeighborList& buf) {
    st.lamps[encode(st.walker)] = rng.next_bit();
    st.walker = random_step(g, st.walker, rng, buf);
    st.lamps[encode(st.walker)] = rng.next_bit();
}

// SWS run that also tracks the underlying walk's visited set and range
class SwsWalk {
  public:
    SwsWalk(GraphSpec g, const Vertex& start, RngStream stream)
        : graph_(std::move(g)), state_(start), stream_(stream) {
        visited_.insert(encode(start));
    }

    void step() {
        sws_step(state_, graph_, stream_, buf_);
        if (visited_.insert(encode(state_.walker))) ++range_;
        ++steps_;
    }

    const WreathState& state() const { return state_; }
    const Vertex& walker() const { return state_.walker; }
    std::uint64_t steps() const { return steps_; }
    std::uint64_t range() const { return range_; }
    std::uint64_t lit_count() const { return state_.lit_count(); }

    bool lamps_subset_of_visited() const {
        for (const auto& [id, on] : state_.lamps)
            if (on && !visited_.contains(id)) return false;
        return true;
    }

  private:
    GraphSpec graph_;
    WreathState state_;
    RngStream stream_;
    NeighborList buf_;
    IdSet visited_{1 << 12};
    std::uint64_t steps_ = 0;
    std::uint64_t range_ = 1;
};

// ---------------------------------------------------------------------------
// distance bracket on the wreath product
//
// LB = |differing lamps| + max_y (d(x0,y) + d(y,xn))   (d(x0,xn) if none)
// UB = |differing lamps| + nearest-neighbor tour x0 -> lamps -> xn

struct DistanceBracket {
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
};

template <typename DistFn>
DistanceBracket distance_bracket_with(const std::vector<Vertex>& differing, const Vertex& x0,
                                      const Vertex& xn, DistFn&& dist) {
    DistanceBracket br;
    std::uint64_t toggles = differing.size();
    std::uint64_t direct = dist(x0, xn);
    std::uint64_t detour = direct;
    for (const Vertex& y : differing)
        detour = std::max(detour, static_cast<std::uint64_t>(dist(x0, y)) + dist(y, xn));
    br.lower = toggles + detour;

    // greedy nearest-neighbor tour through the differing lamps
    std::vector<Vertex> left = differing;
    Vertex at = x0;
    std::uint64_t tour = 0;
    while (!left.empty()) {
        std::size_t best = 0;
        std::uint64_t bestd = dist(at, left[0]);
        for (std::size_t k = 1; k < left.size(); ++k) {
            std::uint64_t d = dist(at, left[k]);
            if (d < bestd) {
                bestd = d;
                best = k;
            }
        }
        tour += bestd;
        at = left[best];
        left[best] = left.back();
        left.pop_back();
    }
    tour += dist(at, xn);
    br.upper = toggles + tour;
    return br;
}

// bracket on a lattice base graph with a closed-form metric
inline DistanceBracket distance_bracket(const GraphSpec& g, const std::vector<Vertex>& differing,
                                        const Vertex& x0, const Vertex& xn) {
    return distance_bracket_with(differing, x0, xn, [&](const Vertex& a, const Vertex& b) {
        auto cf = closed_form_distance(g, a, b);
        if (cf) return static_cast<std::uint64_t>(*cf);
        auto d = graph_distance(g, a, b, 1 << 20);
        if (!d) throw resource_limit_error("bracket distance exceeded its cap");
        return static_cast<std::uint64_t>(*d);
    });
}

// ---------------------------------------------------------------------------
// small explicit base graphs + exact wreath BFS oracle

struct SmallGraph {
    std::vector<std::vector<int>> adj;
    std::vector<Vertex> labels;  // optional lattice labels from a file

    int size() const { return static_cast<int>(adj.size()); }

    static SmallGraph path(int n) {
        SmallGraph g;
        g.adj.assign(n, {});
        for (int v = 0; v + 1 < n; ++v) {
            g.adj[v].push_back(v + 1);
            g.adj[v + 1].push_back(v);
        }
        return g;
    }

    static SmallGraph cycle(int n) {
        SmallGraph g;
        g.adj.assign(n, {});
        for (int v = 0; v < n; ++v) {
            g.adj[v].push_back((v + 1) % n);
            g.adj[(v + 1) % n].push_back(v);
        }
        return g;
    }

    static SmallGraph grid(int w, int h) {
        SmallGraph g;
        g.adj.assign(w * h, {});
        auto id = [&](int i, int j) { return i * h + j; };
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < h; ++j) {
                if (i + 1 < w) {
                    g.adj[id(i, j)].push_back(id(i + 1, j));
                    g.adj[id(i + 1, j)].push_back(id(i, j));
                }
                if (j + 1 < h) {
                    g.adj[id(i, j)].push_back(id(i, j + 1));
                    g.adj[id(i, j + 1)].push_back(id(i, j));
                }
            }
        return g;
    }

    std::vector<std::vector<int>> all_pairs_distances() const {
        int n = size();
        std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
        for (int s = 0; s < n; ++s) {
            std::deque<int> q{s};
            d[s][s] = 0;
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                for (int w : adj[v])
                    if (d[s][w] < 0) {
                        d[s][w] = d[s][v] + 1;
                        q.push_back(w);
                    }
            }
        }
        return d;
    }
};

// base-graph file: sections VERTICES / EDGES with i,j[,tag] tokens
inline SmallGraph parse_small_graph(std::istream& in) {
    SmallGraph g;
    std::unordered_map<std::uint64_t, int> index;
    std::string line, section;
    auto vertex_id = [&](const std::string& tok) {
        Vertex v = parse_vertex_token(tok);
        auto it = index.find(encode(v));
        if (it == index.end()) throw malformed_input_error("edge uses unlisted vertex " + tok);
        return it->second;
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "VERTICES" || tok == "EDGES") {
            section = tok;
            continue;
        }
        if (section == "VERTICES") {
            Vertex v = parse_vertex_token(tok);
            if (!index.insert({encode(v), g.size()}).second)
                throw malformed_input_error("duplicate vertex " + tok);
            g.adj.push_back({});
            g.labels.push_back(v);
        } else if (section == "EDGES") {
            std::string tok2;
            if (!(ls >> tok2)) throw malformed_input_error("edge line needs two vertices");
            int a = vertex_id(tok), b = vertex_id(tok2);
            if (a == b) throw malformed_input_error("self-loop in base graph");
            g.adj[a].push_back(b);
            g.adj[b].push_back(a);
        } else {
            throw malformed_input_error("content before any section header");
        }
    }
    return g;
}

// state of the lamplighter over a small base graph
struct SmallWreathState {
    int walker = 0;
    std::uint32_t lamps = 0;  // bitmask
};

// exact distance on {0,1} wr G via BFS with the standard generators:
// toggle the current lamp (cost 1) or move the walker (cost 1)
inline int wreath_distance_exact(const SmallGraph& g, const SmallWreathState& from,
                                 const SmallWreathState& to) {
    int n = g.size();
    if (n > 10) throw resource_limit_error("wreath BFS oracle supports at most 10 base vertices");
    std::size_t states = static_cast<std::size_t>(n) << n;
    std::vector<int> dist(states, -1);
    auto id = [&](const SmallWreathState& s) {
        return (static_cast<std::size_t>(s.lamps) * n) + s.walker;
    };
    std::deque<SmallWreathState> q{from};
    dist[id(from)] = 0;
    std::size_t goal = id(to);
    if (id(from) == goal) return 0;
    while (!q.empty()) {
        SmallWreathState s = q.front();
        q.pop_front();
        int d = dist[id(s)];
        auto visit = [&](SmallWreathState t) -> bool {
            std::size_t k = id(t);
            if (dist[k] >= 0) return false;
            dist[k] = d + 1;
            if (k == goal) return true;
            q.push_back(t);
            return false;
        };
        SmallWreathState toggle = s;
        toggle.lamps ^= (1u << s.walker);
        if (visit(toggle)) return d + 1;
        for (int w : g.adj[s.walker]) {
            SmallWreathState move = s;
            move.walker = w;
            if (visit(move)) return d + 1;
        }
    }
    throw malformed_input_error("wreath target unreachable (disconnected base graph)");
}

// bracket for small-graph states, using BFS base distances
inline DistanceBracket small_distance_bracket(const SmallGraph& g, const SmallWreathState& from,
                                              const SmallWreathState& to) {
    auto dists = g.all_pairs_distances();
    std::vector<Vertex> differing;
    std::uint32_t diff = from.lamps ^ to.lamps;
    for (int v = 0; v < g.size(); ++v)
        if (diff & (1u << v)) differing.push_back(Vertex{v, 0, 0});
    return distance_bracket_with(differing, Vertex{from.walker, 0, 0}, Vertex{to.walker, 0, 0},
                                 [&](const Vertex& a, const Vertex& b) {
                                     int d = dists[a.i][b.i];
                                     if (d < 0)
                                         throw malformed_input_error("disconnected base graph");
                                     return static_cast<std::uint64_t>(d);
                                 });
}

}  // namespace rangelab
