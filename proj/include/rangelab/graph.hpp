// Graph catalog: infinite recurrent graphs defined by pure neighbor oracles
// over lattice-coordinate vertices.
//
//   square       Z^2, nearest-neighbor edges
//   king         Z^2 with all |dx|_inf = 1 edges
//   triangular   Z^2 with axial-coordinate triangular adjacency (degree 6)
//   hexagonal    honeycomb as the brick-wall subgraph of Z^2 (degree 3)
//   finite-mod   a base lattice altered inside a finite hull (PatchSpec)
//   hybrid       Z^2 plus king diagonals inside alternating annuli whose
//                radii square at every step
//
// Neighbor lists are returned in canonical lexicographic (di, dj, tag)
// order, so a seeded simulation is reproducible across processes.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rangelab/errors.hpp"
#include "rangelab/vertex.hpp"

namespace rangelab {

// ---------------------------------------------------------------------------
// Annulus schedule for the hybrid graph

struct AnnulusSchedule {
    std::uint64_t r0 = 4;  // first radius; successive radii square: R_{j+1} = R_j^2
    std::string rule = "king-on-even-gaps";

    static AnnulusSchedule from_base(std::uint64_t base) {
        if (base < 2) throw malformed_input_error("annulus schedule base must be >= 2");
        AnnulusSchedule s;
        s.r0 = base * base;
        return s;
    }

    // R_j with saturation once the squares leave the coordinate range
    std::uint64_t radius(int j) const {
        std::uint64_t r = r0;
        for (int k = 0; k < j; ++k) r = square_sat(r);
        return r;
    }

    static std::uint64_t square_sat(std::uint64_t r) {
        if (r >= (1ull << 32)) return ~0ull;
        return r * r;
    }
};

// true iff |v|_inf lies in an even-indexed gap [R_2j, R_2j+1)
inline bool in_king_annulus(const AnnulusSchedule& s, const Vertex& v) {
    std::uint64_t m = static_cast<std::uint64_t>(
        std::max(v.i < 0 ? -static_cast<std::int64_t>(v.i) : static_cast<std::int64_t>(v.i),
                 v.j < 0 ? -static_cast<std::int64_t>(v.j) : static_cast<std::int64_t>(v.j)));
    if (m < s.r0) return false;
    std::uint64_t r = s.r0;
    int j = 0;
    for (;;) {
        std::uint64_t next = AnnulusSchedule::square_sat(r);
        if (m < next) return (j % 2) == 0;
        r = next;
        ++j;
    }
}

// ---------------------------------------------------------------------------
// Finite modification (patch) of a base lattice

struct PatchSpec {
    std::vector<Vertex> removed;                     // base vertices deleted
    std::vector<Vertex> added;                       // new vertices (tag >= 1)
    std::vector<std::pair<Vertex, Vertex>> edges;    // explicit edges inside the hull
    int hull_radius = 0;                             // base-graph distance from the origin
    std::string name = "custom";
};

enum class GraphKind { square, king, triangular, hexagonal, finite_modification, hybrid };

namespace detail {

inline int base_distance(GraphKind base, const Vertex& a, const Vertex& b) {
    std::int64_t di = std::int64_t(a.i) - b.i, dj = std::int64_t(a.j) - b.j;
    if (di < 0) di = -di;
    if (dj < 0) dj = -dj;
    if (base == GraphKind::king) return static_cast<int>(std::max(di, dj));
    return static_cast<int>(di + dj);  // square
}

struct PatchData {
    PatchSpec spec;
    GraphKind base;
    std::unordered_set<std::uint64_t> removed_ids;
    std::unordered_set<std::uint64_t> added_ids;
    std::unordered_map<std::uint64_t, std::vector<Vertex>> overlay;  // explicit-edge partners
    int max_degree = 0;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// GraphSpec: immutable description + pure neighbor oracle

struct NeighborList {
    std::array<Vertex, 32> v;
    int n = 0;

    const Vertex* begin() const { return v.data(); }
    const Vertex* end() const { return v.data() + n; }
    const Vertex& operator[](int k) const { return v[k]; }
};

class GraphSpec {
  public:
    static GraphSpec square() { return GraphSpec(GraphKind::square, "square"); }
    static GraphSpec king() { return GraphSpec(GraphKind::king, "king"); }
    static GraphSpec triangular() { return GraphSpec(GraphKind::triangular, "triangular"); }
    static GraphSpec hexagonal() { return GraphSpec(GraphKind::hexagonal, "hexagonal"); }

    static GraphSpec hybrid(std::uint64_t schedule_base = 2) {
        GraphSpec g(GraphKind::hybrid, "hybrid[b=" + std::to_string(schedule_base) + "]");
        g.schedule_ = AnnulusSchedule::from_base(schedule_base);
        return g;
    }

    static GraphSpec finite_modification(GraphKind base, const PatchSpec& patch);

    GraphKind kind() const { return kind_; }
    const std::string& identity() const { return identity_; }
    const AnnulusSchedule& schedule() const { return schedule_; }
    bool has_patch() const { return patch_ != nullptr; }
    const PatchSpec& patch() const { return patch_->spec; }
    GraphKind patch_base() const { return patch_ ? patch_->base : kind_; }

    // declared maximum degree
    int max_degree() const {
        switch (kind_) {
            case GraphKind::square: return 4;
            case GraphKind::king: return 8;
            case GraphKind::triangular: return 6;
            case GraphKind::hexagonal: return 3;
            case GraphKind::hybrid: return 8;
            case GraphKind::finite_modification: return patch_->max_degree;
        }
        return 0;
    }

    bool vertex_transitive() const {
        return kind_ == GraphKind::square || kind_ == GraphKind::king ||
               kind_ == GraphKind::triangular || kind_ == GraphKind::hexagonal;
    }

    bool is_vertex(const Vertex& v) const {
        if (kind_ == GraphKind::finite_modification) {
            if (v.tag != 0) return patch_->added_ids.count(encode(v)) != 0;
            return patch_->removed_ids.count(encode(v)) == 0;
        }
        return v.tag == 0;
    }

    void neighbors_into(const Vertex& v, NeighborList& out) const;

    NeighborList neighbors(const Vertex& v) const {
        NeighborList out;
        neighbors_into(v, out);
        return out;
    }

    int degree(const Vertex& v) const { return neighbors(v).n; }

  private:
    GraphSpec(GraphKind k, std::string id) : kind_(k), identity_(std::move(id)) {}

    void append_sorted_overlay(const Vertex& v, NeighborList& out) const;

    GraphKind kind_;
    std::string identity_;
    AnnulusSchedule schedule_;
    std::shared_ptr<const detail::PatchData> patch_;
};

namespace detail {

// canonical delta tables (lexicographic by (di, dj))
inline constexpr std::array<std::pair<int, int>, 4> kSquareDeltas{
    {{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};
inline constexpr std::array<std::pair<int, int>, 8> kKingDeltas{
    {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};
inline constexpr std::array<std::pair<int, int>, 6> kTriangularDeltas{
    {{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}}};

}  // namespace detail

inline void GraphSpec::append_sorted_overlay(const Vertex& v, NeighborList& out) const {
    auto it = patch_->overlay.find(encode(v));
    if (it == patch_->overlay.end()) return;
    for (const Vertex& w : it->second) out.v[out.n++] = w;
    std::sort(out.v.begin(), out.v.begin() + out.n, [&](const Vertex& a, const Vertex& b) {
        if (a.i - v.i != b.i - v.i) return a.i - v.i < b.i - v.i;
        if (a.j - v.j != b.j - v.j) return a.j - v.j < b.j - v.j;
        return a.tag < b.tag;
    });
}

inline void GraphSpec::neighbors_into(const Vertex& v, NeighborList& out) const {
    out.n = 0;
    switch (kind_) {
        case GraphKind::square: {
            if (v.tag != 0) throw invalid_vertex_error("tagged vertex on a plain lattice");
            for (auto [di, dj] : detail::kSquareDeltas)
                out.v[out.n++] = Vertex{v.i + di, v.j + dj, 0};
            return;
        }
        case GraphKind::king: {
            if (v.tag != 0) throw invalid_vertex_error("tagged vertex on a plain lattice");
            for (auto [di, dj] : detail::kKingDeltas)
                out.v[out.n++] = Vertex{v.i + di, v.j + dj, 0};
            return;
        }
        case GraphKind::triangular: {
            if (v.tag != 0) throw invalid_vertex_error("tagged vertex on a plain lattice");
            for (auto [di, dj] : detail::kTriangularDeltas)
                out.v[out.n++] = Vertex{v.i + di, v.j + dj, 0};
            return;
        }
        case GraphKind::hexagonal: {
            if (v.tag != 0) throw invalid_vertex_error("tagged vertex on a plain lattice");
            // vertical partner alternates with the parity of i + j
            bool up = ((v.i + v.j) & 1) == 0;
            out.v[out.n++] = Vertex{v.i - 1, v.j, 0};
            if (!up) out.v[out.n++] = Vertex{v.i, v.j - 1, 0};
            if (up) out.v[out.n++] = Vertex{v.i, v.j + 1, 0};
            out.v[out.n++] = Vertex{v.i + 1, v.j, 0};
            return;
        }
        case GraphKind::hybrid: {
            if (v.tag != 0) throw invalid_vertex_error("tagged vertex on a plain lattice");
            bool v_in = in_king_annulus(schedule_, v);
            for (auto [di, dj] : detail::kKingDeltas) {
                Vertex w{v.i + di, v.j + dj, 0};
                bool diagonal = (di != 0 && dj != 0);
                if (!diagonal || (v_in && in_king_annulus(schedule_, w))) out.v[out.n++] = w;
            }
            return;
        }
        case GraphKind::finite_modification: {
            const auto& p = *patch_;
            std::uint64_t id = encode(v);
            if (v.tag != 0) {
                if (p.added_ids.count(id) == 0)
                    throw invalid_vertex_error("unknown tagged vertex " + to_string(v));
                append_sorted_overlay(v, out);
                return;
            }
            if (p.removed_ids.count(id) != 0)
                throw invalid_vertex_error("vertex " + to_string(v) + " was removed");
            const bool near_patch =
                detail::base_distance(p.base, Vertex{0, 0, 0}, v) <= p.spec.hull_radius + 1;
            if (p.base == GraphKind::square) {
                for (auto [di, dj] : detail::kSquareDeltas) {
                    Vertex w{v.i + di, v.j + dj, 0};
                    if (near_patch && p.removed_ids.count(encode(w)) != 0) continue;
                    out.v[out.n++] = w;
                }
            } else {
                for (auto [di, dj] : detail::kKingDeltas) {
                    Vertex w{v.i + di, v.j + dj, 0};
                    if (near_patch && p.removed_ids.count(encode(w)) != 0) continue;
                    out.v[out.n++] = w;
                }
            }
            if (near_patch && p.overlay.count(id) != 0) {
                NeighborList extra;
                append_sorted_overlay(v, extra);
                NeighborList merged;
                // merge two (di, dj, tag)-sorted runs
                int a = 0, b = 0;
                auto less = [&](const Vertex& x, const Vertex& y) {
                    if (x.i - v.i != y.i - v.i) return x.i - v.i < y.i - v.i;
                    if (x.j - v.j != y.j - v.j) return x.j - v.j < y.j - v.j;
                    return x.tag < y.tag;
                };
                while (a < out.n && b < extra.n)
                    merged.v[merged.n++] = less(out.v[a], extra.v[b]) ? out.v[a++] : extra.v[b++];
                while (a < out.n) merged.v[merged.n++] = out.v[a++];
                while (b < extra.n) merged.v[merged.n++] = extra.v[b++];
                out = merged;
            }
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Patch validation and construction

inline GraphSpec GraphSpec::finite_modification(GraphKind base, const PatchSpec& patch) {
    if (base != GraphKind::square && base != GraphKind::king)
        throw malformed_input_error("finite modifications are defined over square or king bases");
    if (patch.hull_radius < 1) throw malformed_input_error("patch hull radius must be >= 1");

    auto data = std::make_shared<detail::PatchData>();
    data->spec = patch;
    data->base = base;
    const Vertex origin{0, 0, 0};

    for (const Vertex& r : patch.removed) {
        if (r.tag != 0) throw malformed_input_error("removed vertices must be base vertices");
        if (detail::base_distance(base, origin, r) >= patch.hull_radius)
            throw malformed_input_error("removed vertex " + to_string(r) +
                                        " not strictly inside the hull");
        if (!data->removed_ids.insert(encode(r)).second)
            throw malformed_input_error("duplicate removed vertex " + to_string(r));
    }
    for (const Vertex& a : patch.added) {
        if (a.tag == 0) throw malformed_input_error("added vertices must carry a nonzero tag");
        if (detail::base_distance(base, origin, a) > patch.hull_radius)
            throw malformed_input_error("added vertex " + to_string(a) + " outside the hull");
        if (!data->added_ids.insert(encode(a)).second)
            throw malformed_input_error("duplicate added vertex " + to_string(a));
    }

    auto in_hull = [&](const Vertex& v) {
        if (v.tag != 0) return data->added_ids.count(encode(v)) != 0;
        return detail::base_distance(base, origin, v) <= patch.hull_radius &&
               data->removed_ids.count(encode(v)) == 0;
    };
    auto is_base_edge = [&](const Vertex& a, const Vertex& b) {
        if (a.tag != 0 || b.tag != 0) return false;
        int di = std::abs(a.i - b.i), dj = std::abs(a.j - b.j);
        if (base == GraphKind::square) return di + dj == 1;
        return std::max(di, dj) == 1;
    };

    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (const auto& [a, b] : patch.edges) {
        if (encode(a) == encode(b)) throw malformed_input_error("self-loop in patch edge list");
        if (!in_hull(a) || !in_hull(b))
            throw malformed_input_error("patch edge " + to_string(a) + " -- " + to_string(b) +
                                        " leaves the hull or touches a removed vertex");
        if (is_base_edge(a, b))
            throw malformed_input_error("patch edge duplicates a base edge: " + to_string(a) +
                                        " -- " + to_string(b));
        std::uint64_t ia = encode(a), ib = encode(b);
        auto key = std::make_pair(std::min(ia, ib), std::max(ia, ib));
        if (!seen.insert(key).second)
            throw malformed_input_error("duplicate patch edge " + to_string(a) + " -- " +
                                        to_string(b));
        data->overlay[encode(a)].push_back(b);
        data->overlay[encode(b)].push_back(a);
    }
    for (const Vertex& a : patch.added)
        if (data->overlay.count(encode(a)) == 0)
            throw malformed_input_error("added vertex " + to_string(a) + " has no edges");

    GraphSpec g(GraphKind::finite_modification,
                std::string("mod-") + (base == GraphKind::square ? "square" : "king") + "[" +
                    patch.name + "]");
    g.patch_ = data;

    // degree bound over every vertex the patch can touch
    int maxdeg = base == GraphKind::square ? 4 : 8;
    {
        std::vector<Vertex> touched = patch.added;
        for (const auto& [id, partners] : data->overlay) {
            (void)partners;
            touched.push_back(decode(id));
        }
        for (int i = -patch.hull_radius - 1; i <= patch.hull_radius + 1; ++i)
            for (int j = -patch.hull_radius - 1; j <= patch.hull_radius + 1; ++j) {
                Vertex v{i, j, 0};
                if (detail::base_distance(base, origin, v) <= patch.hull_radius + 1 &&
                    data->removed_ids.count(encode(v)) == 0)
                    touched.push_back(v);
            }
        for (const Vertex& v : touched) {
            int d = g.degree(v);
            if (d > 32)
                throw malformed_input_error("patched degree of " + to_string(v) + " exceeds 32");
            maxdeg = std::max(maxdeg, d);
        }
    }
    std::const_pointer_cast<detail::PatchData>(g.patch_)->max_degree = maxdeg;

    // connectivity: inside the hull everything must reach the ring at
    // hull_radius + 1, which belongs to the untouched bulk
    {
        std::unordered_set<std::uint64_t> region;  // hull vertices + added
        std::vector<Vertex> ring;
        for (int i = -patch.hull_radius - 1; i <= patch.hull_radius + 1; ++i)
            for (int j = -patch.hull_radius - 1; j <= patch.hull_radius + 1; ++j) {
                Vertex v{i, j, 0};
                int d = detail::base_distance(base, origin, v);
                if (d <= patch.hull_radius && data->removed_ids.count(encode(v)) == 0)
                    region.insert(encode(v));
                else if (d == patch.hull_radius + 1)
                    ring.push_back(v);
            }
        for (const Vertex& a : patch.added) region.insert(encode(a));

        std::unordered_set<std::uint64_t> reached;
        std::vector<Vertex> frontier = ring;
        while (!frontier.empty()) {
            Vertex v = frontier.back();
            frontier.pop_back();
            for (const Vertex& w : g.neighbors(v)) {
                std::uint64_t wid = encode(w);
                if (region.count(wid) != 0 && reached.insert(wid).second) frontier.push_back(w);
            }
        }
        if (reached.size() != region.size())
            throw malformed_input_error("patch disconnects part of the hull from the bulk");
    }
    return g;
}

// ---------------------------------------------------------------------------
// Built-in patches

// reroutes (1,1) through a tagged replacement and adds one diagonal to the origin
inline PatchSpec demo_patch() {
    PatchSpec p;
    p.name = "demo";
    p.removed = {Vertex{1, 1, 0}};
    Vertex u{1, 1, 1};
    p.added = {u};
    p.edges = {{u, Vertex{0, 1, 0}},
               {u, Vertex{2, 1, 0}},
               {u, Vertex{1, 0, 0}},
               {u, Vertex{1, 2, 0}},
               {u, Vertex{0, 0, 0}}};
    p.hull_radius = 3;
    return p;
}

// adds every king diagonal whose endpoints both lie in the L1 ball of radius 5
inline PatchSpec diagonal_ball_patch(int radius = 5) {
    PatchSpec p;
    p.name = "diag-ball" + std::to_string(radius);
    p.hull_radius = radius + 1;
    for (int i = -radius; i <= radius; ++i)
        for (int j = -radius; j <= radius; ++j) {
            if (std::abs(i) + std::abs(j) > radius) continue;
            for (auto [di, dj] : {std::pair{1, 1}, std::pair{1, -1}}) {
                int i2 = i + di, j2 = j + dj;
                if (std::abs(i2) + std::abs(j2) > radius) continue;
                p.edges.push_back({Vertex{i, j, 0}, Vertex{i2, j2, 0}});
            }
        }
    return p;
}

// ---------------------------------------------------------------------------
// Patch files: sections REMOVE / ADD / EDGES, vertices as i,j[,tag],
// optional "HULL n" line, '#' comments

inline Vertex parse_vertex_token(const std::string& tok) {
    Vertex v;
    int fields = std::sscanf(tok.c_str(), "%d,%d,%hhu", &v.i, &v.j, &v.tag);
    if (fields < 2) throw malformed_input_error("bad vertex token '" + tok + "'");
    return v;
}

inline PatchSpec parse_patch(std::istream& in, const std::string& name = "file") {
    PatchSpec p;
    p.name = name;
    std::string line, section;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "REMOVE" || tok == "ADD" || tok == "EDGES") {
            section = tok;
            continue;
        }
        if (tok == "HULL") {
            if (!(ls >> p.hull_radius)) throw malformed_input_error("HULL needs a radius");
            continue;
        }
        if (section == "REMOVE") {
            p.removed.push_back(parse_vertex_token(tok));
        } else if (section == "ADD") {
            p.added.push_back(parse_vertex_token(tok));
        } else if (section == "EDGES") {
            std::string tok2;
            if (!(ls >> tok2)) throw malformed_input_error("edge line needs two vertices");
            p.edges.push_back({parse_vertex_token(tok), parse_vertex_token(tok2)});
        } else {
            throw malformed_input_error("content before any section header: '" + tok + "'");
        }
    }
    if (p.hull_radius == 0) {
        auto acc = [&](const Vertex& v) {
            p.hull_radius = std::max(p.hull_radius, std::abs(v.i) + std::abs(v.j) + 1);
        };
        for (const auto& v : p.removed) acc(v);
        for (const auto& v : p.added) acc(v);
        for (const auto& [a, b] : p.edges) {
            acc(a);
            acc(b);
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Distances and balls

// closed-form graph distance where the lattice metric is known
inline std::optional<std::int64_t> closed_form_distance(const GraphSpec& g, const Vertex& x,
                                                        const Vertex& y) {
    std::int64_t di = std::int64_t(x.i) - y.i, dj = std::int64_t(x.j) - y.j;
    std::int64_t adi = di < 0 ? -di : di, adj = dj < 0 ? -dj : dj;
    switch (g.kind()) {
        case GraphKind::square: return adi + adj;
        case GraphKind::king: return std::max(adi, adj);
        case GraphKind::triangular: {
            std::int64_t s = di + dj;
            return std::max({adi, adj, s < 0 ? -s : s});
        }
        default: return std::nullopt;
    }
}

struct ResourceGuards {
    std::size_t max_ball_vertices = 20'000'000;
    std::size_t max_grid_cells = 80'000'000;
};

// widest possible L-inf displacement of a path of r steps: lattice edges
// move by 1, but patch overlay edges, confined to the hull, can shortcut;
// entering and leaving the hull adds at most 2 * hull_radius
inline int ball_box_halfwidth(const GraphSpec& g, int r) {
    if (g.kind() != GraphKind::finite_modification) return r;
    return r + 2 * g.patch().hull_radius;
}

// BFS closure of B(x, r) with exact distances and an O(1) vertex -> ordinal
// index backed by a dense grid (tagged vertices go to a side map)
class Ball {
  public:
    Ball(const GraphSpec& g, const Vertex& x, int r, const ResourceGuards& guards = {}) {
        if (r < 0) throw malformed_input_error("ball radius must be >= 0");
        if (!g.is_vertex(x)) throw invalid_vertex_error("ball center " + to_string(x));
        int half = ball_box_halfwidth(g, r);
        i0_ = x.i - half;
        j0_ = x.j - half;
        width_ = 2 * static_cast<std::int64_t>(half) + 1;
        std::size_t cells = static_cast<std::size_t>(width_) * static_cast<std::size_t>(width_);
        if (cells > guards.max_grid_cells)
            throw resource_limit_error("ball grid of " + std::to_string(cells) +
                                       " cells exceeds the configured guard");
        grid_.assign(cells, -1);

        push(x, 0);
        for (std::size_t head = 0; head < verts_.size(); ++head) {
            Vertex v = verts_[head];
            int d = dist_[head];
            if (d == r) continue;
            for (const Vertex& w : g.neighbors(v)) {
                if (index_of(w) >= 0) continue;
                if (verts_.size() >= guards.max_ball_vertices)
                    throw resource_limit_error("ball exceeds the vertex guard");
                push(w, d + 1);
            }
        }
    }

    std::int32_t index_of(const Vertex& v) const {
        if (v.tag != 0) {
            auto it = tagged_.find(encode(v));
            return it == tagged_.end() ? -1 : it->second;
        }
        std::int64_t gi = v.i - i0_, gj = v.j - j0_;
        if (gi < 0 || gj < 0 || gi >= width_ || gj >= width_) return -1;
        return grid_[static_cast<std::size_t>(gi) * width_ + gj];
    }

    std::size_t size() const { return verts_.size(); }
    const std::vector<Vertex>& vertices() const { return verts_; }
    const std::vector<std::int32_t>& distances() const { return dist_; }
    int radius_reached() const { return verts_.empty() ? 0 : dist_.back(); }

  private:
    void push(const Vertex& v, int d) {
        std::int32_t idx = static_cast<std::int32_t>(verts_.size());
        if (v.tag != 0) {
            tagged_[encode(v)] = idx;
        } else {
            std::int64_t gi = v.i - i0_, gj = v.j - j0_;
            if (gi < 0 || gj < 0 || gi >= width_ || gj >= width_)
                throw resource_limit_error("ball escaped its bounding box");
            grid_[static_cast<std::size_t>(gi) * width_ + gj] = idx;
        }
        verts_.push_back(v);
        dist_.push_back(d);
    }

    std::int64_t i0_ = 0, j0_ = 0, width_ = 0;
    std::vector<std::int32_t> grid_;
    std::unordered_map<std::uint64_t, std::int32_t> tagged_;
    std::vector<Vertex> verts_;
    std::vector<std::int32_t> dist_;
};

// exact BFS distance, or nullopt when it exceeds cap
inline std::optional<int> graph_distance(const GraphSpec& g, const Vertex& x, const Vertex& y,
                                         int cap, const ResourceGuards& guards = {}) {
    if (!g.is_vertex(x)) throw invalid_vertex_error("distance source " + to_string(x));
    if (!g.is_vertex(y)) throw invalid_vertex_error("distance target " + to_string(y));
    if (cap < 0) throw malformed_input_error("distance cap must be >= 0");
    if (encode(x) == encode(y)) return 0;
    if (auto cf = closed_form_distance(g, x, y)) {
        if (g.kind() != GraphKind::finite_modification)
            return *cf <= cap ? std::optional<int>(static_cast<int>(*cf)) : std::nullopt;
    }
    std::unordered_map<std::uint64_t, int> dist;
    dist[encode(x)] = 0;
    std::vector<Vertex> frontier{x}, next;
    for (int d = 0; d < cap; ++d) {
        for (const Vertex& v : frontier)
            for (const Vertex& w : g.neighbors(v)) {
                auto [it, fresh] = dist.insert({encode(w), d + 1});
                (void)it;
                if (!fresh) continue;
                if (encode(w) == encode(y)) return d + 1;
                if (dist.size() > guards.max_ball_vertices)
                    throw resource_limit_error("distance search exceeds the vertex guard");
                next.push_back(w);
            }
        frontier.swap(next);
        next.clear();
        if (frontier.empty()) break;
    }
    return std::nullopt;
}

}  // namespace rangelab
