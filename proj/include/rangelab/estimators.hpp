// Headline statistics assembled from exact series and Monte Carlo output:
// scaled range, survival-based r-bounds, tail probabilities, intersection
// moment scans, volume/heat-kernel regularity fits, exit-time profiles.
// Every figure leaves this module as an EstimateRecord carrying its
// provenance (method, replica count, seed).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rangelab/errors.hpp"
#include "rangelab/graph.hpp"
#include "rangelab/heat_kernel.hpp"
#include "rangelab/killed.hpp"
#include "rangelab/series.hpp"

namespace rangelab {

enum class Method { exact, mc, enumeration };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::mc: return "mc";
        case Method::enumeration: return "enumeration";
    }
    return "?";
}

struct EstimateRecord {
    std::string statistic;
    std::string graph;
    std::uint64_t n = 0;
    double value = 0.0;
    double dispersion = 0.0;  // standard error; 0 for exact records
    std::uint64_t replicas = 0;
    std::uint64_t seed = 0;
    Method method = Method::exact;
};

inline EstimateRecord exact_record(std::string stat, std::string graph, std::uint64_t n,
                                   double value) {
    return EstimateRecord{std::move(stat), std::move(graph), n, value, 0.0, 0, 0, Method::exact};
}

inline EstimateRecord mc_record(std::string stat, std::string graph, std::uint64_t n, double mean,
                                double se, std::uint64_t replicas, std::uint64_t seed) {
    if (replicas < 2) throw malformed_input_error("mc records need at least 2 replicas");
    return EstimateRecord{std::move(stat), std::move(graph), n,      mean,
                          se,              replicas,         seed,   Method::mc};
}

// ---------------------------------------------------------------------------
// sample statistics

struct SampleStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased

    double se() const { return count > 1 ? std::sqrt(variance / count) : 0.0; }
};

inline SampleStats sample_stats(const std::vector<double>& xs) {
    SampleStats s;
    s.count = xs.size();
    if (xs.empty()) return s;
    double acc = 0.0;
    for (double x : xs) acc += x;
    s.mean = acc / xs.size();
    if (xs.size() > 1) {
        double sq = 0.0;
        for (double x : xs) sq += (x - s.mean) * (x - s.mean);
        s.variance = sq / (xs.size() - 1);
    }
    return s;
}

inline double moment(const std::vector<double>& xs, int p) {
    double acc = 0.0;
    for (double x : xs) acc += std::pow(x, p);
    return xs.empty() ? 0.0 : acc / xs.size();
}

// least squares fit y = slope * x + intercept
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw malformed_input_error("line fit needs >= 2 paired points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
        sxx += x[k] * x[k];
        sxy += x[k] * y[k];
    }
    double n = static_cast<double>(x.size());
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw malformed_input_error("degenerate line fit");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

// ---------------------------------------------------------------------------
// scaled range

// exact E[R_n] * log n / n records over an n grid, from a survival series
inline std::vector<EstimateRecord> scaled_range_exact(const std::string& graph,
                                                      const SurvivalSeries& sv,
                                                      const std::vector<std::uint64_t>& grid) {
    std::vector<EstimateRecord> out;
    double acc = 0.0;
    std::size_t gi = 0;
    for (std::size_t m = 0; m < sv.q.size() && gi < grid.size(); ++m) {
        acc += sv.q[m];
        if (m == grid[gi]) {
            if (m < 3) throw malformed_input_error("scaled range needs n >= 3");
            out.push_back(exact_record("scaled_expected_range", graph, m,
                                       acc * std::log(double(m)) / double(m)));
            ++gi;
        }
    }
    if (gi != grid.size()) throw malformed_input_error("survival series shorter than the grid");
    return out;
}

// mean scaled range from per-replica R_n samples
inline EstimateRecord scaled_range_mc(const std::string& graph, std::uint64_t n,
                                      const std::vector<double>& range_samples,
                                      std::uint64_t seed) {
    if (n < 3) throw malformed_input_error("scaled range needs n >= 3");
    std::vector<double> scaled(range_samples.size());
    double f = std::log(double(n)) / double(n);
    for (std::size_t k = 0; k < range_samples.size(); ++k) scaled[k] = range_samples[k] * f;
    auto st = sample_stats(scaled);
    return mc_record("scaled_range", graph, n, st.mean, st.se(), st.count, seed);
}

// ---------------------------------------------------------------------------
// survival r-bounds: per n, (log n * min_z q_z(n), log n * max_z q_z(n))

struct RBoundsPoint {
    std::uint64_t n;
    double lower;  // log n * min_z q_z(n)
    double upper;  // log n * max_z q_z(n)
};

inline std::vector<RBoundsPoint> r_bounds_estimate(
    const std::vector<SurvivalSeries>& per_vertex, const std::vector<std::uint64_t>& grid) {
    if (per_vertex.empty()) throw malformed_input_error("r-bounds needs a nonempty vertex sample");
    std::vector<RBoundsPoint> out;
    for (std::uint64_t n : grid) {
        RBoundsPoint pt{n, 0.0, 0.0};
        double lo = 2.0, hi = -1.0;
        for (const auto& sv : per_vertex) {
            if (sv.q.size() <= n) throw malformed_input_error("survival series shorter than grid");
            lo = std::min(lo, sv.q[n]);
            hi = std::max(hi, sv.q[n]);
        }
        pt.lower = std::log(double(n)) * lo;
        pt.upper = std::log(double(n)) * hi;
        out.push_back(pt);
    }
    return out;
}

// ---------------------------------------------------------------------------
// empirical tail probability P(R_n <= a n / log n)
//
// The comparison is inclusive (R_n <= threshold + 1e-9). At a = log n the
// threshold is n and the event excludes only perfectly self-avoiding paths,
// which at the scales used here have empirical probability 0.

struct TailPoint {
    std::uint64_t n;
    double threshold;
    double probability;
    double se;
};

inline TailPoint tail_probability(std::uint64_t n, double a,
                                  const std::vector<double>& range_samples) {
    if (range_samples.size() < 100)
        throw malformed_input_error("tail probability needs >= 100 replicas");
    TailPoint pt{n, a * double(n) / std::log(double(n)), 0.0, 0.0};
    std::uint64_t hits = 0;
    for (double r : range_samples)
        if (r <= pt.threshold + 1e-9) ++hits;
    double p = double(hits) / range_samples.size();
    pt.probability = p;
    pt.se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / range_samples.size());
    return pt;
}

// ---------------------------------------------------------------------------
// intersection moment scan

struct MomentScanPoint {
    std::uint64_t n = 0;
    double i2_normalized = 0.0;  // E[I_n^2] (log n)^4 / (n^2 (loglog n)^2)
    double i2_se_normalized = 0.0;
    double j_normalized = 0.0;   // E[J_n] (log n)^2 / (n loglog n)
    double j_se_normalized = 0.0;
    double j_mean = 0.0;
    double j_se = 0.0;
    double j_p2 = 0.0, j_p2_bound = 0.0;  // E[J^2] vs (2!)^2 (E[J]+3se)^2
    double j_p3 = 0.0, j_p3_bound = 0.0;
    bool moment_ok = false;
};

inline MomentScanPoint intersection_moment_point(std::uint64_t n,
                                                 const std::vector<double>& self_samples,
                                                 const std::vector<double>& two_walk_samples) {
    if (self_samples.size() < 200 || two_walk_samples.size() < 200)
        throw malformed_input_error("moment scan needs >= 200 replicas per grid point");
    if (n < 3) throw malformed_input_error("moment scan needs n >= 3");
    MomentScanPoint pt;
    pt.n = n;
    double ln = std::log(double(n)), lln = std::log(ln);
    double i2_factor = std::pow(ln, 4) / (double(n) * double(n) * lln * lln);
    std::vector<double> squares(self_samples.size());
    for (std::size_t k = 0; k < self_samples.size(); ++k)
        squares[k] = self_samples[k] * self_samples[k];
    auto ist = sample_stats(squares);
    pt.i2_normalized = ist.mean * i2_factor;
    pt.i2_se_normalized = ist.se() * i2_factor;
    auto jst = sample_stats(two_walk_samples);
    pt.j_se_normalized = jst.se() * ln * ln / (double(n) * lln);
    pt.j_mean = jst.mean;
    pt.j_se = jst.se();
    pt.j_normalized = jst.mean * ln * ln / (double(n) * lln);
    double cushion = jst.mean + 3.0 * jst.se();
    pt.j_p2 = moment(two_walk_samples, 2);
    pt.j_p2_bound = 4.0 * cushion * cushion;  // (2!)^2
    pt.j_p3 = moment(two_walk_samples, 3);
    pt.j_p3_bound = 36.0 * cushion * cushion * cushion;  // (3!)^2
    pt.moment_ok = pt.j_p2 <= pt.j_p2_bound && pt.j_p3 <= pt.j_p3_bound;
    return pt;
}

// ---------------------------------------------------------------------------
// regularity fits

struct RegularityReport {
    double alpha = 0.0, c1 = 0.0, c2 = 0.0;          // |B(x,r)| ~ r^alpha
    double window_min = 0.0, window_max = 0.0;       // n (p_n + p_{n+1})
    double beta = 2.0;
    double c3 = 0.0, c4 = 0.0, c5 = 0.0, c6 = 0.0;   // kernel envelopes
    std::size_t excluded_pairs = 0;                  // d(x,y) > n or zero mass
    double exit_min_ratio = 0.0, exit_max_ratio = 0.0;  // E[T_exit] / r^2
};

// Ahlfors fit over |B(x,r)| counts: alpha from least squares on logs,
// (c1, c2) as realized min/max of |B| / r^alpha
inline void ahlfors_fit(const GraphSpec& g, const std::vector<Vertex>& sample,
                        const std::vector<int>& r_grid, RegularityReport& rep,
                        const ResourceGuards& guards = {}) {
    if (r_grid.size() < 4) throw malformed_input_error("ahlfors fit needs >= 4 radii");
    std::vector<double> lx, ly;
    std::vector<std::pair<double, double>> counts;  // (r, |B|)
    for (const Vertex& x : sample)
        for (int r : r_grid) {
            if (r < 1) throw malformed_input_error("ahlfors radii must be >= 1");
            double b = static_cast<double>(Ball(g, x, r, guards).size());
            lx.push_back(std::log(double(r)));
            ly.push_back(std::log(b));
            counts.push_back({double(r), b});
        }
    auto fit = fit_line(lx, ly);
    rep.alpha = fit.slope;
    rep.c1 = 1e300;
    rep.c2 = 0.0;
    for (auto [r, b] : counts) {
        double ratio = b / std::pow(r, rep.alpha);
        rep.c1 = std::min(rep.c1, ratio);
        rep.c2 = std::max(rep.c2, ratio);
    }
}

// window of n (p_n(x,x) + p_{n+1}(x,x)) over sample x grid
inline void on_diagonal_window(const std::vector<ReturnSeries>& series,
                               const std::vector<std::uint64_t>& n_grid, RegularityReport& rep) {
    rep.window_min = 1e300;
    rep.window_max = 0.0;
    for (const auto& rs : series)
        for (std::uint64_t n : n_grid) {
            if (rs.p.size() <= n + 1)
                throw malformed_input_error("return series shorter than the window grid");
            double w = double(n) * (rs.p[n] + rs.p[n + 1]);
            rep.window_min = std::min(rep.window_min, w);
            rep.window_max = std::max(rep.window_max, w);
        }
}

// sub-Gaussian envelope fit at fixed beta = 2: regress
// -log(p_n(x,y) |B(x, sqrt n)|) against d(x,y)^2 / n over admissible pairs.
// Snapshots the kernel at each grid time, so it is meant for nmax <= ~1000.
inline void subgaussian_fit(const GraphSpec& g, const Vertex& x,
                            std::vector<std::uint64_t> n_grid, const std::vector<int>& dist_grid,
                            RegularityReport& rep, const ResourceGuards& guards = {}) {
    if (n_grid.empty() || dist_grid.empty())
        throw malformed_input_error("subgaussian fit needs nonempty grids");
    std::sort(n_grid.begin(), n_grid.end());
    n_grid.erase(std::unique(n_grid.begin(), n_grid.end()), n_grid.end());
    if (n_grid.front() < 1) throw malformed_input_error("subgaussian grid needs n >= 1");
    std::uint64_t nmax = n_grid.back();

    KernelDomain dom(g, x, static_cast<int>(nmax) + 1, guards);
    HeatKernelRun run(dom);
    std::map<std::uint64_t, std::vector<double>> snap;
    {
        std::set<std::uint64_t> needed;
        for (std::uint64_t n : n_grid) {
            needed.insert(n);
            needed.insert(n + 1);
        }
        for (std::uint64_t t = 1; t <= nmax + 1; ++t) {
            run.step();
            if (needed.count(t)) snap[t] = run.masses();
        }
    }

    struct PairObs {
        double x;      // d^2 / n
        double upper;  // p_n |B(sqrt n)|
        double lower;  // (p_n + p_{n+1}) |B(sqrt n)|
    };
    std::vector<PairObs> obs;
    rep.excluded_pairs = 0;

    for (std::uint64_t n : n_grid) {
        int r = static_cast<int>(std::floor(std::sqrt(double(n))));
        double volume = static_cast<double>(Ball(g, x, r, guards).size());
        const auto& pn_row = snap.at(n);
        const auto& pn1_row = snap.at(n + 1);
        for (int d : dist_grid) {
            // probe along the axis and the diagonal
            std::vector<Vertex> ys = {Vertex{x.i + d, x.j, 0}};
            if (d % 2 == 0) ys.push_back(Vertex{x.i + d / 2, x.j + d / 2, 0});
            for (const Vertex& y : ys) {
                double dd;
                if (auto cf = closed_form_distance(g, x, y)) {
                    dd = double(*cf);
                } else {
                    auto bfs = graph_distance(g, x, y, 4 * d + 4, guards);
                    if (!bfs) {
                        ++rep.excluded_pairs;
                        continue;
                    }
                    dd = double(*bfs);
                }
                if (dd > double(n)) {
                    ++rep.excluded_pairs;
                    continue;
                }
                std::int32_t c = dom.index_of(y);
                double pn = c >= 0 ? pn_row[c] : 0.0;
                double pn1 = c >= 0 ? pn1_row[c] : 0.0;
                if (pn <= 0.0 && pn + pn1 <= 0.0) {
                    ++rep.excluded_pairs;
                    continue;
                }
                obs.push_back(PairObs{dd * dd / double(n), pn > 0 ? pn * volume : 0.0,
                                      (pn + pn1) * volume});
            }
        }
    }
    if (obs.size() < 4) throw malformed_input_error("not enough admissible kernel pairs");

    std::vector<double> xs, yu, yl;
    for (const auto& o : obs) {
        if (o.upper > 0) {
            xs.push_back(o.x);
            yu.push_back(-std::log(o.upper));
        }
    }
    auto fu = fit_line(xs, yu);
    rep.c4 = fu.slope;
    xs.clear();
    for (const auto& o : obs) {
        xs.push_back(o.x);
        yl.push_back(-std::log(o.lower));
    }
    auto fl = fit_line(xs, yl);
    rep.c6 = fl.slope;

    rep.c3 = 0.0;
    rep.c5 = 1e300;
    for (const auto& o : obs) {
        if (o.upper > 0) rep.c3 = std::max(rep.c3, o.upper * std::exp(rep.c4 * o.x));
        rep.c5 = std::min(rep.c5, o.lower * std::exp(rep.c6 * o.x));
    }
}

// realized min/max of E^x[T_exit(B(x,r))] / r^2
inline void exit_time_profile(const GraphSpec& g, const std::vector<Vertex>& sample,
                              const std::vector<int>& r_grid, RegularityReport& rep,
                              const ResourceGuards& guards = {}) {
    rep.exit_min_ratio = 1e300;
    rep.exit_max_ratio = 0.0;
    for (const Vertex& x : sample)
        for (int r : r_grid) {
            if (r < 1) throw malformed_input_error("exit radii must be >= 1");
            double t = expected_exit_time(g, x, r, guards);
            double ratio = t / (double(r) * double(r));
            rep.exit_min_ratio = std::min(rep.exit_min_ratio, ratio);
            rep.exit_max_ratio = std::max(rep.exit_max_ratio, ratio);
        }
}

}  // namespace rangelab
