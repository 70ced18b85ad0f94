// Planar embeddings with unit-circumradius faces: generators for the square,
// triangular and hexagonal tilings, a least-squares circumcircle verifier,
// rhombus-angle and edge/dual-edge bounds, and isoperimetric scans.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rangelab/errors.hpp"
#include "rangelab/graph.hpp"

namespace rangelab {

struct EmbeddedPlanarGraph {
    std::vector<double> x, y;                      // vertex coordinates
    std::vector<std::vector<std::int32_t>> faces;  // counterclockwise vertex cycles
    double tolerance = 1e-9;

    std::size_t n_vertices() const { return x.size(); }
};

struct FaceCheck {
    std::int32_t face = 0;
    double cx = 0.0, cy = 0.0;   // circumcenter
    double radius = 0.0;         // least-squares circumradius
    double worst_vertex = 0.0;   // max | |v - c| - radius |
    bool ok = false;
};

struct EdgeGeometry {
    std::int32_t a = 0, b = 0;          // endpoints
    std::int32_t f1 = -1, f2 = -1;      // adjacent faces (f2 = -1 on the boundary)
    double length = 0.0;
    double dual_length = 0.0;           // distance between adjacent circumcenters
    double theta_a = 0.0, theta_b = 0.0;  // rhombus half-angles at each endpoint
};

struct IsoradialCertificate {
    bool pass = false;
    double tolerance = 1e-9;
    std::vector<FaceCheck> faces;
    std::vector<EdgeGeometry> edges;
    std::size_t boundary_edges = 0;     // excluded from dual-length bounds
    double worst_radius_deviation = 0.0;
    double worst_vertex_deviation = 0.0;
    std::int32_t offending_face = -1;
    double theta_min = 0.0, theta_max = 0.0;
    double angle_lower = 0.0;            // configured window, reported not asserted
    double angle_upper = 0.0;
    bool angle_window_ok = false;
    double c1 = 0.0, c2 = 0.0;           // primal edge length bounds
    double c1_dual = 0.0, c2_dual = 0.0; // dual edge length bounds
};

// Angle window options: the conventional upper bound is pi/2 - c; the
// strict pi/4 - c variant is available for comparison and is violated
// already by the unit square lattice (theta = pi/4 exactly).
struct AngleWindow {
    double c = 0.05;
    bool strict_quarter = false;  // use pi/4 - c instead of pi/2 - c

    double lower() const { return c; }
    double upper() const {
        return (strict_quarter ? 3.14159265358979323846 / 4.0
                               : 3.14159265358979323846 / 2.0) -
               c;
    }
};

// ---------------------------------------------------------------------------
// generators (faces all have circumradius exactly 1)

enum class TilingKind { square, triangular, hexagonal };

inline TilingKind tiling_from_name(const std::string& s) {
    if (s == "square") return TilingKind::square;
    if (s == "triangular") return TilingKind::triangular;
    if (s == "hexagonal") return TilingKind::hexagonal;
    throw malformed_input_error("unknown tiling '" + s + "'");
}

inline EmbeddedPlanarGraph generate_isoradial(TilingKind kind, int extent) {
    if (extent < 1) throw malformed_input_error("tiling extent must be >= 1");
    EmbeddedPlanarGraph g;
    const double sq2 = std::sqrt(2.0);
    const double sq3 = std::sqrt(3.0);
    switch (kind) {
        case TilingKind::square: {
            // edge sqrt(2): unit half-diagonal
            int w = extent + 1;
            auto id = [&](int i, int j) { return i * w + j; };
            for (int i = 0; i < w; ++i)
                for (int j = 0; j < w; ++j) {
                    g.x.push_back(sq2 * i);
                    g.y.push_back(sq2 * j);
                }
            for (int i = 0; i < extent; ++i)
                for (int j = 0; j < extent; ++j)
                    g.faces.push_back({static_cast<std::int32_t>(id(i, j)),
                                       static_cast<std::int32_t>(id(i + 1, j)),
                                       static_cast<std::int32_t>(id(i + 1, j + 1)),
                                       static_cast<std::int32_t>(id(i, j + 1))});
            break;
        }
        case TilingKind::triangular: {
            // edge sqrt(3): equilateral triangles with circumradius 1
            int w = extent + 1;
            auto id = [&](int i, int j) { return i * w + j; };
            for (int i = 0; i < w; ++i)
                for (int j = 0; j < w; ++j) {
                    g.x.push_back(sq3 * (i + 0.5 * j));
                    g.y.push_back(1.5 * j);
                }
            for (int i = 0; i < extent; ++i)
                for (int j = 0; j < extent; ++j) {
                    g.faces.push_back({static_cast<std::int32_t>(id(i, j)),
                                       static_cast<std::int32_t>(id(i + 1, j)),
                                       static_cast<std::int32_t>(id(i, j + 1))});
                    g.faces.push_back({static_cast<std::int32_t>(id(i + 1, j)),
                                       static_cast<std::int32_t>(id(i + 1, j + 1)),
                                       static_cast<std::int32_t>(id(i, j + 1))});
                }
            break;
        }
        case TilingKind::hexagonal: {
            // side 1; vertices indexed on the (sqrt(3)/2, 1/2) half-grid
            std::map<std::pair<int, int>, std::int32_t> ids;
            auto vid = [&](int p, int q) {
                auto it = ids.find({p, q});
                if (it != ids.end()) return it->second;
                std::int32_t id = static_cast<std::int32_t>(g.x.size());
                ids[{p, q}] = id;
                g.x.push_back(0.5 * sq3 * p);
                g.y.push_back(0.5 * q);
                return id;
            };
            // hexagon centered at (2i + j, 3j) in half-grid units
            static const int off[6][2] = {{1, 1}, {0, 2}, {-1, 1}, {-1, -1}, {0, -2}, {1, -1}};
            for (int i = 0; i < extent; ++i)
                for (int j = 0; j < extent; ++j) {
                    int pc = 2 * i + j, qc = 3 * j;
                    std::vector<std::int32_t> cycle;
                    for (const auto& o : off) cycle.push_back(vid(pc + o[0], qc + o[1]));
                    g.faces.push_back(cycle);
                }
            break;
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// verification

namespace detail {

// least-squares circle through >= 3 points: linear in (cx, cy, t)
inline bool fit_circle(const std::vector<double>& px, const std::vector<double>& py, double& cx,
                       double& cy, double& r) {
    std::size_t n = px.size();
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, sz = 0, sxz = 0, syz = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double z = px[k] * px[k] + py[k] * py[k];
        sx += px[k];
        sy += py[k];
        sxx += px[k] * px[k];
        syy += py[k] * py[k];
        sxy += px[k] * py[k];
        sz += z;
        sxz += px[k] * z;
        syz += py[k] * z;
    }
    // normal equations for z = 2 a x + 2 b y + c
    double m[3][4] = {{2 * sxx, 2 * sxy, sx, sxz},
                      {2 * sxy, 2 * syy, sy, syz},
                      {2 * sx, 2 * sy, double(n), sz}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int rrow = col + 1; rrow < 3; ++rrow)
            if (std::fabs(m[rrow][col]) > std::fabs(m[piv][col])) piv = rrow;
        std::swap(m[piv], m[col]);
        if (std::fabs(m[col][col]) < 1e-14) return false;
        for (int rrow = 0; rrow < 3; ++rrow) {
            if (rrow == col) continue;
            double f = m[rrow][col] / m[col][col];
            for (int cc = col; cc < 4; ++cc) m[rrow][cc] -= f * m[col][cc];
        }
    }
    cx = m[0][3] / m[0][0];
    cy = m[1][3] / m[1][1];
    double c = m[2][3] / m[2][2];
    double rr = c + cx * cx + cy * cy;
    if (rr <= 0) return false;
    r = std::sqrt(rr);
    return true;
}

}  // namespace detail

inline IsoradialCertificate verify_isoradial(const EmbeddedPlanarGraph& g,
                                             const AngleWindow& window = {}) {
    IsoradialCertificate cert;
    cert.tolerance = g.tolerance;
    cert.pass = true;

    // per-face circumcircles
    for (std::size_t f = 0; f < g.faces.size(); ++f) {
        const auto& cycle = g.faces[f];
        if (cycle.size() < 3) throw malformed_input_error("face with fewer than 3 vertices");
        std::vector<double> px, py;
        for (std::int32_t v : cycle) {
            if (v < 0 || static_cast<std::size_t>(v) >= g.n_vertices())
                throw malformed_input_error("face references an unknown vertex");
            if (!std::isfinite(g.x[v]) || !std::isfinite(g.y[v]))
                throw malformed_input_error("non-finite vertex coordinate");
            px.push_back(g.x[v]);
            py.push_back(g.y[v]);
        }
        FaceCheck fc;
        fc.face = static_cast<std::int32_t>(f);
        if (!detail::fit_circle(px, py, fc.cx, fc.cy, fc.radius))
            throw malformed_input_error("degenerate face circumcircle");
        for (std::size_t k = 0; k < px.size(); ++k) {
            double d = std::hypot(px[k] - fc.cx, py[k] - fc.cy);
            fc.worst_vertex = std::max(fc.worst_vertex, std::fabs(d - fc.radius));
        }
        fc.ok = std::fabs(fc.radius - 1.0) <= g.tolerance && fc.worst_vertex <= g.tolerance;
        double dev = std::max(std::fabs(fc.radius - 1.0), fc.worst_vertex);
        if (dev > std::max(cert.worst_radius_deviation, cert.worst_vertex_deviation))
            cert.offending_face = fc.face;
        cert.worst_radius_deviation = std::max(cert.worst_radius_deviation,
                                               std::fabs(fc.radius - 1.0));
        cert.worst_vertex_deviation = std::max(cert.worst_vertex_deviation, fc.worst_vertex);
        if (!fc.ok) cert.pass = false;
        cert.faces.push_back(fc);
    }

    // edges from face cycles; each undirected edge borders at most two faces
    std::map<std::pair<std::int32_t, std::int32_t>, std::pair<std::int32_t, std::int32_t>> edge_faces;
    for (std::size_t f = 0; f < g.faces.size(); ++f) {
        const auto& cycle = g.faces[f];
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            std::int32_t a = cycle[k], b = cycle[(k + 1) % cycle.size()];
            auto key = std::make_pair(std::min(a, b), std::max(a, b));
            auto it = edge_faces.find(key);
            if (it == edge_faces.end()) {
                edge_faces[key] = {static_cast<std::int32_t>(f), -1};
            } else {
                if (it->second.second != -1)
                    throw malformed_input_error("edge borders more than two faces");
                it->second.second = static_cast<std::int32_t>(f);
            }
        }
    }

    cert.theta_min = 1e300;
    cert.theta_max = 0.0;
    cert.c1 = 1e300;
    cert.c2 = 0.0;
    cert.c1_dual = 1e300;
    cert.c2_dual = 0.0;
    for (const auto& [key, fs] : edge_faces) {
        EdgeGeometry e;
        e.a = key.first;
        e.b = key.second;
        e.f1 = fs.first;
        e.f2 = fs.second;
        e.length = std::hypot(g.x[e.a] - g.x[e.b], g.y[e.a] - g.y[e.b]);
        cert.c1 = std::min(cert.c1, e.length);
        cert.c2 = std::max(cert.c2, e.length);
        if (e.f2 < 0) {
            ++cert.boundary_edges;
        } else {
            const auto& fa = cert.faces[e.f1];
            const auto& fb = cert.faces[e.f2];
            e.dual_length = std::hypot(fa.cx - fb.cx, fa.cy - fb.cy);
            cert.c1_dual = std::min(cert.c1_dual, e.dual_length);
            cert.c2_dual = std::max(cert.c2_dual, e.dual_length);
            // rhombus (a, c1, b, c2): half-angle at each endpoint
            auto half_angle = [&](std::int32_t v) {
                double u1x = fa.cx - g.x[v], u1y = fa.cy - g.y[v];
                double u2x = fb.cx - g.x[v], u2y = fb.cy - g.y[v];
                double dot = u1x * u2x + u1y * u2y;
                double n1 = std::hypot(u1x, u1y), n2 = std::hypot(u2x, u2y);
                double c = std::clamp(dot / (n1 * n2), -1.0, 1.0);
                return 0.5 * std::acos(c);
            };
            e.theta_a = half_angle(e.a);
            e.theta_b = half_angle(e.b);
            cert.theta_min = std::min({cert.theta_min, e.theta_a, e.theta_b});
            cert.theta_max = std::max({cert.theta_max, e.theta_a, e.theta_b});
        }
        cert.edges.push_back(e);
    }
    cert.angle_lower = window.lower();
    cert.angle_upper = window.upper();
    cert.angle_window_ok = cert.theta_min >= cert.angle_lower - 1e-12 &&
                           cert.theta_max <= cert.angle_upper + 1e-12;
    return cert;
}

struct EdgeDualBounds {
    double c1, c2, c1_dual, c2_dual;
    std::size_t boundary_edges;
};

inline EdgeDualBounds edge_and_dual_bounds(const IsoradialCertificate& cert) {
    if (!cert.pass) throw malformed_input_error("bounds require a passing certificate");
    return EdgeDualBounds{cert.c1, cert.c2, cert.c1_dual, cert.c2_dual, cert.boundary_edges};
}

// ---------------------------------------------------------------------------
// isoperimetric scans: |boundary edges| / sqrt(|Omega|)

struct IsoperimetricSample {
    std::size_t volume;
    std::size_t boundary;
    double ratio;
};

inline IsoperimetricSample isoperimetric_sample(const GraphSpec& g,
                                                const std::vector<Vertex>& omega) {
    if (omega.empty()) throw malformed_input_error("isoperimetric sample must be nonempty");
    std::set<std::uint64_t> inside;
    for (const Vertex& v : omega) inside.insert(encode(v));
    std::size_t boundary = 0;
    for (const Vertex& v : omega)
        for (const Vertex& w : g.neighbors(v))
            if (inside.count(encode(w)) == 0) ++boundary;
    IsoperimetricSample s;
    s.volume = inside.size();
    s.boundary = boundary;
    s.ratio = double(boundary) / std::sqrt(double(inside.size()));
    return s;
}

inline IsoperimetricSample isoperimetric_sample(const EmbeddedPlanarGraph& g,
                                                const std::vector<std::int32_t>& omega) {
    if (omega.empty()) throw malformed_input_error("isoperimetric sample must be nonempty");
    std::set<std::pair<std::int32_t, std::int32_t>> edges;
    for (const auto& cycle : g.faces)
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            std::int32_t a = cycle[k], b = cycle[(k + 1) % cycle.size()];
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    std::set<std::int32_t> inside(omega.begin(), omega.end());
    std::size_t boundary = 0;
    for (const auto& [a, b] : edges)
        if (inside.count(a) != inside.count(b)) ++boundary;
    IsoperimetricSample s;
    s.volume = inside.size();
    s.boundary = boundary;
    s.ratio = double(boundary) / std::sqrt(double(inside.size()));
    return s;
}

// min ratio over all k x k blocks, k = 1..kmax, anchored at the origin
inline double block_isoperimetric_min_ratio(const GraphSpec& g, int kmax) {
    double best = 1e300;
    for (int k = 1; k <= kmax; ++k) {
        std::vector<Vertex> omega;
        omega.reserve(static_cast<std::size_t>(k) * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) omega.push_back(Vertex{i, j, 0});
        best = std::min(best, isoperimetric_sample(g, omega).ratio);
    }
    return best;
}

// ---------------------------------------------------------------------------
// line-oriented text format: "V id x y" and "F id v1 v2 ... vk"

inline void write_embedded(std::ostream& out, const EmbeddedPlanarGraph& g) {
    out.precision(17);
    for (std::size_t v = 0; v < g.n_vertices(); ++v)
        out << "V " << v << " " << g.x[v] << " " << g.y[v] << "\n";
    for (std::size_t f = 0; f < g.faces.size(); ++f) {
        out << "F " << f;
        for (std::int32_t v : g.faces[f]) out << " " << v;
        out << "\n";
    }
}

inline EmbeddedPlanarGraph read_embedded(std::istream& in) {
    EmbeddedPlanarGraph g;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "V") {
            std::size_t id;
            double x, y;
            if (!(ls >> id >> x >> y)) throw malformed_input_error("bad vertex line");
            if (g.x.size() != id) throw malformed_input_error("vertex ids must be sequential");
            g.x.push_back(x);
            g.y.push_back(y);
        } else if (kind == "F") {
            std::size_t id;
            if (!(ls >> id)) throw malformed_input_error("bad face line");
            std::vector<std::int32_t> cycle;
            std::int32_t v;
            while (ls >> v) cycle.push_back(v);
            if (cycle.size() < 3) throw malformed_input_error("face with fewer than 3 vertices");
            g.faces.push_back(cycle);
        } else {
            throw malformed_input_error("unknown record '" + kind + "'");
        }
    }
    return g;
}

}  // namespace rangelab
