// Exact heat-kernel evolution over B(x, n).
//
// mu_0 = delta_x,  mu_{t+1}(y) = sum_{z ~ y} mu_t(z) / deg(z)
//
// A walk of n steps cannot leave B(x, n), so evolving on that ball is free of
// truncation error; the only inaccuracy is floating-point accumulation.
// Cells live on a dense (2n+1)^2 grid (tagged patch vertices in a short side
// list), adjacency is a per-cell bitmask over the graph kind's delta table,
// and patch-touched cells fall back to explicit rows.
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rangelab/errors.hpp"
#include "rangelab/graph.hpp"
#include "rangelab/series.hpp"
#include "rangelab/vertex.hpp"

namespace rangelab {

class KernelDomain {
  public:
    KernelDomain(const GraphSpec& g, const Vertex& x, int radius,
                 const ResourceGuards& guards = {})
        : origin_(x), radius_(radius) {
        if (radius < 0) throw malformed_input_error("kernel horizon must be >= 0");
        if (!g.is_vertex(x)) throw invalid_vertex_error("kernel origin " + to_string(x));
        half_width_ = ball_box_halfwidth(g, radius);
        i0_ = x.i - half_width_;
        j0_ = x.j - half_width_;
        width_ = 2 * static_cast<std::int64_t>(half_width_) + 1;
        std::size_t cells = static_cast<std::size_t>(width_) * static_cast<std::size_t>(width_);
        if (cells > guards.max_grid_cells)
            throw resource_limit_error("kernel grid exceeds the configured cell guard");

        // delta table by kind (kept <= 8 entries so masks fit a byte)
        switch (g.kind()) {
            case GraphKind::square:
                set_deltas(detail::kSquareDeltas.data(), 4);
                break;
            case GraphKind::triangular:
                set_deltas(detail::kTriangularDeltas.data(), 6);
                break;
            case GraphKind::hexagonal:
                set_deltas(detail::kSquareDeltas.data(), 4);
                break;
            default:
                set_deltas(detail::kKingDeltas.data(), 8);
                break;
        }

        dist_.assign(cells, -1);
        mask_.assign(cells, 0);
        deg_.assign(cells, 0);

        // BFS over the ball, filling the grid in place
        std::vector<std::int32_t> frontier, next;
        std::int32_t start = cell_of(x);  // tagged origins go to the extra list
        if (start < 0) throw invalid_vertex_error("origin outside its own grid");
        set_dist(start, 0);
        frontier.push_back(start);
        n_vertices_ = 1;
        int d = 0;
        NeighborList nb;
        while (!frontier.empty() && d < radius) {
            for (std::int32_t ci : frontier) {
                Vertex v = vertex_at(ci);
                g.neighbors_into(v, nb);
                for (int k = 0; k < nb.n; ++k) {
                    std::int32_t wi = cell_of(nb.v[k]);
                    if (cell_dist(wi) < 0) {
                        set_dist(wi, d + 1);
                        ++n_vertices_;
                        if (n_vertices_ > guards.max_ball_vertices)
                            throw resource_limit_error("kernel ball exceeds the vertex guard");
                        next.push_back(wi);
                    }
                }
            }
            frontier.swap(next);
            next.clear();
            ++d;
        }

        // adjacency: masks for pure delta rows, explicit rows otherwise
        fill_adjacency(g);
    }

    std::size_t n_cells() const {
        return static_cast<std::size_t>(width_) * width_ + extra_.size();
    }
    std::size_t n_vertices() const { return n_vertices_; }
    int radius() const { return radius_; }
    const Vertex& origin() const { return origin_; }

    std::int32_t index_of(const Vertex& v) const {
        if (v.tag != 0) {
            auto it = extra_index_.find(encode(v));
            return it == extra_index_.end() ? -1 : it->second;
        }
        std::int32_t ci = grid_index(v);
        if (ci < 0) return -1;
        return dist_[ci] < 0 ? -1 : ci;
    }

    Vertex vertex_at(std::int32_t cell) const {
        std::size_t grid_cells = static_cast<std::size_t>(width_) * width_;
        if (static_cast<std::size_t>(cell) >= grid_cells)
            return extra_[static_cast<std::size_t>(cell) - grid_cells];
        return Vertex{static_cast<std::int32_t>(i0_ + cell / width_),
                      static_cast<std::int32_t>(j0_ + cell % width_), 0};
    }

    int distance_of_cell(std::int32_t cell) const { return cell_dist(cell); }

  private:
    friend class HeatKernelRun;

    void set_deltas(const std::pair<int, int>* d, int n) {
        ndeltas_ = n;
        for (int k = 0; k < n; ++k) deltas_[k] = d[k];
    }

    std::int32_t grid_index(const Vertex& v) const {
        std::int64_t gi = v.i - i0_, gj = v.j - j0_;
        if (gi < 0 || gj < 0 || gi >= width_ || gj >= width_) return -1;
        return static_cast<std::int32_t>(gi * width_ + gj);
    }

    // cell handle: grid index, or grid_cells + k for tagged extras
    std::int32_t cell_of(const Vertex& v) {
        if (v.tag == 0) {
            std::int32_t ci = grid_index(v);
            if (ci < 0) throw resource_limit_error("kernel ball escaped its bounding box");
            return ci;
        }
        std::uint64_t id = encode(v);
        auto it = extra_index_.find(id);
        if (it != extra_index_.end()) return it->second;
        std::int32_t cell =
            static_cast<std::int32_t>(static_cast<std::size_t>(width_) * width_ + extra_.size());
        extra_.push_back(v);
        extra_dist_.push_back(-1);
        extra_index_[id] = cell;
        return cell;
    }

    int cell_dist(std::int32_t cell) const {
        if (cell < 0) return -1;
        std::size_t grid_cells = static_cast<std::size_t>(width_) * width_;
        if (static_cast<std::size_t>(cell) >= grid_cells)
            return extra_dist_[static_cast<std::size_t>(cell) - grid_cells];
        return dist_[cell];
    }

    void set_dist(std::int32_t cell, int d) {
        std::size_t grid_cells = static_cast<std::size_t>(width_) * width_;
        if (static_cast<std::size_t>(cell) >= grid_cells)
            extra_dist_[static_cast<std::size_t>(cell) - grid_cells] = d;
        else
            dist_[cell] = d;
    }

    void fill_adjacency(const GraphSpec& g) {
        for (int k = 0; k < ndeltas_; ++k)
            delta_off_[k] = static_cast<std::int64_t>(deltas_[k].first) * width_ +
                            deltas_[k].second;
        std::size_t grid_cells = static_cast<std::size_t>(width_) * width_;
        deg_.resize(n_cells(), 0);
        NeighborList nb;
        for (std::size_t cell = 0; cell < n_cells(); ++cell) {
            int cd = cell_dist(static_cast<std::int32_t>(cell));
            if (cd < 0) continue;
            Vertex v = vertex_at(static_cast<std::int32_t>(cell));
            g.neighbors_into(v, nb);
            deg_[cell] = static_cast<std::uint8_t>(nb.n);
            bool pure = v.tag == 0;
            std::uint8_t mask = 0;
            if (pure) {
                for (int k = 0; k < nb.n; ++k) {
                    const Vertex& w = nb.v[k];
                    int bit = -1;
                    if (w.tag == 0) {
                        for (int t = 0; t < ndeltas_; ++t)
                            if (w.i - v.i == deltas_[t].first && w.j - v.j == deltas_[t].second) {
                                bit = t;
                                break;
                            }
                    }
                    if (bit < 0) {
                        pure = false;
                        break;
                    }
                    std::int32_t wi = grid_index(w);
                    if (wi >= 0 && dist_[wi] >= 0) mask |= static_cast<std::uint8_t>(1u << bit);
                }
            }
            if (pure && cell < grid_cells) {
                mask_[cell] = mask;
            } else {
                // explicit row (tagged vertices and anything adjacent to them)
                std::vector<std::int32_t> row;
                for (int k = 0; k < nb.n; ++k) {
                    std::int32_t wi = index_of(nb.v[k]);
                    if (wi >= 0) row.push_back(wi);
                    std::int64_t stride = std::max(std::abs(std::int64_t(nb.v[k].i) - v.i),
                                                   std::abs(std::int64_t(nb.v[k].j) - v.j));
                    max_stride_ = std::max(max_stride_, stride);
                }
                special_[static_cast<std::int32_t>(cell)] = std::move(row);
                if (cell < grid_cells) mask_[cell] = 0;
            }
        }
    }

    Vertex origin_;
    int radius_;
    std::int64_t half_width_ = 0;  // box half-width, >= radius when patches shortcut
    std::int64_t i0_ = 0, j0_ = 0, width_ = 0;
    std::vector<std::int32_t> dist_;
    std::vector<std::uint8_t> mask_;
    std::vector<std::uint8_t> deg_;
    std::array<std::pair<int, int>, 8> deltas_{};
    std::array<std::int64_t, 8> delta_off_{};
    int ndeltas_ = 0;
    std::vector<Vertex> extra_;
    std::vector<int> extra_dist_;
    std::unordered_map<std::uint64_t, std::int32_t> extra_index_;
    std::unordered_map<std::int32_t, std::vector<std::int32_t>> special_;
    std::int64_t max_stride_ = 1;  // widest L-inf jump of any edge (overlay edges may exceed 1)
    std::size_t n_vertices_ = 0;
};

// One evolution job: private buffers, optional absorbing target.
class HeatKernelRun {
  public:
    explicit HeatKernelRun(const KernelDomain& dom) : dom_(&dom) {
        cur_.assign(dom.n_cells(), 0.0);
        next_.assign(dom.n_cells(), 0.0);
        inv_deg_.assign(33, 0.0);
        for (int d = 1; d <= 32; ++d) inv_deg_[d] = 1.0 / d;
        origin_cell_ = dom.index_of(dom.origin());
        cur_[origin_cell_] = 1.0;
    }

    // absorb mass arriving at y (arrival times >= 1); returns this
    HeatKernelRun& absorb_at(const Vertex& y) {
        absorb_cell_ = dom_->index_of(y);
        return *this;
    }

    int time() const { return t_; }
    double absorbed() const { return absorbed_; }
    double diagonal() const { return cur_[origin_cell_]; }

    double mass_at(const Vertex& v) const {
        std::int32_t c = dom_->index_of(v);
        return c < 0 ? 0.0 : cur_[c];
    }

    double total_mass() const {
        long double s = 0.0L;
        for (double m : cur_) s += m;
        return static_cast<double>(s);
    }

    const KernelDomain& domain() const { return *dom_; }
    const std::vector<double>& masses() const { return cur_; }

    void step() {
        if (t_ >= dom_->radius_)
            throw resource_limit_error("kernel evolution past its ball horizon");
        const std::int64_t W = dom_->width_;
        const std::int64_t c0 = dom_->half_width_;  // origin sits at the grid center
        const std::int64_t reach = static_cast<std::int64_t>(t_) * dom_->max_stride_;
        std::int64_t lo = std::max<std::int64_t>(0, c0 - reach);
        std::int64_t hi = std::min<std::int64_t>(W - 1, c0 + reach);
        const std::uint8_t* mask = dom_->mask_.data();
        const std::uint8_t* deg = dom_->deg_.data();
        const std::int32_t* dist = dom_->dist_.data();
        double* cur = cur_.data();
        double* nxt = next_.data();
        for (std::int64_t gi = lo; gi <= hi; ++gi) {
            std::int64_t row = gi * W;
            for (std::int64_t gj = lo; gj <= hi; ++gj) {
                std::int64_t c = row + gj;
                double m = cur[c];
                if (m == 0.0) continue;
                if (dist[c] < 0) continue;
                std::uint8_t mk = mask[c];
                if (mk != 0) {
                    double w = m * inv_deg_[deg[c]];
                    for (int k = 0; k < dom_->ndeltas_; ++k)
                        if (mk & (1u << k)) nxt[c + dom_->delta_off_[k]] += w;
                } else {
                    push_special(static_cast<std::int32_t>(c), m);
                }
            }
        }
        std::size_t grid_cells = static_cast<std::size_t>(W) * W;
        for (std::size_t c = grid_cells; c < cur_.size(); ++c)
            if (cur[c] != 0.0) push_special(static_cast<std::int32_t>(c), cur[c]);

        if (absorb_cell_ >= 0) {
            absorbed_ += next_[absorb_cell_];
            next_[absorb_cell_] = 0.0;
        }
        std::swap(cur_, next_);
        std::fill(next_.begin(), next_.end(), 0.0);
        ++t_;
    }

  private:
    void push_special(std::int32_t c, double m) {
        auto it = dom_->special_.find(c);
        if (it == dom_->special_.end()) return;
        double w = m * inv_deg_[dom_->deg_[c]];
        for (std::int32_t n : it->second) next_[n] += w;
    }

    const KernelDomain* dom_;
    std::vector<double> cur_, next_;
    std::vector<double> inv_deg_;
    std::int32_t origin_cell_ = -1;
    std::int32_t absorb_cell_ = -1;
    double absorbed_ = 0.0;
    int t_ = 0;
};

// Snapshot of p_t(x, .) with its index map.
struct KernelVector {
    Vertex origin;
    int time = 0;
    std::shared_ptr<const KernelDomain> domain;
    std::vector<double> mass;

    double at(const Vertex& v) const {
        std::int32_t c = domain->index_of(v);
        return c < 0 ? 0.0 : mass[c];
    }
    double total() const {
        long double s = 0.0L;
        for (double m : mass) s += m;
        return static_cast<double>(s);
    }
};

// Full row p_t(x,.) for t = 0..n. Materializes n+1 snapshots; meant for
// small horizons (tests, per-target sweeps). Large runs should drive
// HeatKernelRun directly.
inline std::vector<KernelVector> heat_kernel_row(const GraphSpec& g, const Vertex& x, int n,
                                                 const ResourceGuards& guards = {}) {
    auto dom = std::make_shared<KernelDomain>(g, x, n, guards);
    HeatKernelRun run(*dom);
    std::vector<KernelVector> out;
    out.reserve(n + 1);
    out.push_back({x, 0, dom, run.masses()});
    for (int t = 1; t <= n; ++t) {
        run.step();
        out.push_back({x, t, dom, run.masses()});
    }
    return out;
}

// p_k(x,x), k = 0..n
inline ReturnSeries return_series(const GraphSpec& g, const Vertex& x, int n,
                                  const ResourceGuards& guards = {}) {
    KernelDomain dom(g, x, n, guards);
    HeatKernelRun run(dom);
    ReturnSeries out;
    out.graph = g.identity();
    out.origin = x;
    out.p.reserve(n + 1);
    out.p.push_back(1.0);
    for (int t = 1; t <= n; ++t) {
        run.step();
        out.p.push_back(run.diagonal());
    }
    return out;
}

enum class HitConvention { first_return, first_visit };  // T (k >= 1) vs T^0 (k >= 0)

// P^x(T_y <= m) for m = 0..n, by evolving with absorption at y
inline std::vector<double> hitting_series(const GraphSpec& g, const Vertex& x, const Vertex& y,
                                          int n, HitConvention conv = HitConvention::first_return,
                                          const ResourceGuards& guards = {}) {
    if (!g.is_vertex(y)) throw invalid_vertex_error("hitting target " + to_string(y));
    if (conv == HitConvention::first_visit && encode(x) == encode(y))
        return std::vector<double>(n + 1, 1.0);
    KernelDomain dom(g, x, n, guards);
    HeatKernelRun run(dom);
    run.absorb_at(y);
    std::vector<double> cum(n + 1, 0.0);
    for (int t = 1; t <= n; ++t) {
        run.step();
        cum[t] = run.absorbed();
    }
    return cum;
}

inline double hitting_probability(const GraphSpec& g, const Vertex& x, const Vertex& y, int n,
                                  HitConvention conv = HitConvention::first_return,
                                  const ResourceGuards& guards = {}) {
    return hitting_series(g, x, y, n, conv, guards).back();
}

}  // namespace rangelab
