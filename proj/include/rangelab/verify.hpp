// Verification suite: every check the build must pass, each printed as one
// PASS/FAIL line. The full profile runs the checks at their production
// scales; quick runs reduced horizons for a fast smoke signal.
#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "rangelab/config.hpp"
#include "rangelab/estimators.hpp"
#include "rangelab/heat_kernel.hpp"
#include "rangelab/isoradial.hpp"
#include "rangelab/killed.hpp"
#include "rangelab/lamplighter.hpp"
#include "rangelab/parallel.hpp"
#include "rangelab/range_exact.hpp"
#include "rangelab/runner.hpp"
#include "rangelab/series.hpp"
#include "rangelab/walk.hpp"
#include "rangelab/z2_series.hpp"

namespace rangelab {

enum class VerifyProfile { quick, full };

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr std::uint64_t kVerifySeed = 20250801;
inline constexpr double kPiConst = 3.14159265358979323846;

namespace verify_detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[FAILED " << what << "] ";
        }
    }
    void info(const std::string& s) { detail << s << " "; }
};

// --- 1. Z^2 on-diagonal constant -----------------------------------------
inline CriterionResult c1(VerifyProfile p) {
    int n = p == VerifyProfile::full ? 500 : 250;
    Check ck;
    auto rs = return_series(GraphSpec::square(), {0, 0, 0}, 2 * n);
    double v = double(n) * rs.p[2 * n];
    ck.require(std::fabs(v - 1.0 / kPiConst) <= 1e-3,
               "|n p_2n - 1/pi| <= 1e-3 (got " + fmt(std::fabs(v - 1.0 / kPiConst)) + ")");
    auto closed = z2::diagonal_series(2 * n);
    double worst = 0.0;
    for (int k = 0; k <= 2 * n; ++k) worst = std::max(worst, std::fabs(rs.p[k] - closed[k]));
    ck.require(worst <= 1e-12, "closed-form agreement <= 1e-12 (got " + fmt(worst) + ")");
    ck.info("n*p_2n=" + fmt(v) + " 1/pi=" + fmt(1.0 / kPiConst) + " closed-form-dev=" + fmt(worst));
    return {"C1", "square on-diagonal constant", ck.pass, ck.detail.str(), 0};
}

// --- 2. king-lattice constant ---------------------------------------------
inline CriterionResult c2(VerifyProfile p) {
    int n = p == VerifyProfile::full ? 1000 : 256;
    Check ck;
    auto rs = return_series(GraphSpec::king(), {0, 0, 0}, n);
    const double target = 2.0 / (3.0 * kPiConst);
    double v_half = double(n / 2) * rs.p[n / 2];
    double v_full = double(n) * rs.p[n];
    double extrapolated = 2.0 * v_full - v_half;  // first-order Richardson
    ck.require(std::fabs(extrapolated - target) <= 0.05 * target,
               "extrapolated n p_n within 5% of 2/(3pi) (got " + fmt(extrapolated) + ")");
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) sum += rs.p[k];
    double sum_scaled = sum / std::log(double(n));
    ck.require(std::fabs(sum_scaled - target) <= 0.15 * target,
               "sum p_k / log n within 15% of 2/(3pi) (got " + fmt(sum_scaled) + ")");
    double even_reading = double(n / 2) * rs.p[n];  // n' p_{2n'} at n' = n/2
    ck.info("n*p_n=" + fmt(v_full) + " extrapolated=" + fmt(extrapolated) + " target=" +
            fmt(target) + " sum/logn=" + fmt(sum_scaled) + " (implies r=3pi/2)");
    ck.info("normalization flag: n*p_2n=" + fmt(even_reading) + " converges to 1/(3pi)=" +
            fmt(target / 2) + ", half the all-times constant; both readings reported");
    return {"C2", "king-lattice constant", ck.pass, ck.detail.str(), 0};
}

// --- 3. last-exit identity -------------------------------------------------
inline CriterionResult c3(VerifyProfile p) {
    int m = p == VerifyProfile::full ? 512 : 256;
    Check ck;
    struct Case {
        GraphSpec g;
        Vertex x;
    };
    std::vector<Case> cases = {
        {GraphSpec::square(), {0, 0, 0}},
        {GraphSpec::finite_modification(GraphKind::square, demo_patch()), {0, 0, 0}},
    };
    if (p == VerifyProfile::full) {
        cases.push_back({GraphSpec::king(), {0, 0, 0}});
        cases.push_back({GraphSpec::hybrid(), {136, 0, 0}});   // square-gap regime
        cases.push_back({GraphSpec::hybrid(), {1000, 0, 0}});  // king-annulus regime
    }
    for (const auto& c : cases) {
        auto rs = return_series(c.g, c.x, m);
        auto sv = survival(first_return(rs));
        double res = last_exit_identity_check(rs, sv, m);
        ck.require(res <= 1e-10, c.g.identity() + "@" + to_string(c.x) + " residual <= 1e-10 (got " +
                                     fmt(res) + ")");
        ck.info(c.g.identity() + "@" + to_string(c.x) + ":" + fmt(res));
    }
    return {"C3", "last-exit identity residual", ck.pass, ck.detail.str(), 0};
}

// --- 4. three-way range agreement -------------------------------------------
inline CriterionResult c4(VerifyProfile p) {
    Check ck;
    int n_sq = p == VerifyProfile::full ? 10 : 8;
    int n_kg = p == VerifyProfile::full ? 8 : 6;
    struct Case {
        GraphSpec g;
        int nmax;
    };
    for (const auto& c : {Case{GraphSpec::square(), n_sq}, Case{GraphSpec::king(), n_kg}}) {
        for (int n = 1; n <= c.nmax; ++n) {
            double e = expected_range_exact(c.g, {0, 0, 0}, n, RangeMethod::enumeration);
            double t = expected_range_exact(c.g, {0, 0, 0}, n, RangeMethod::per_target);
            double r = expected_range_exact(c.g, {0, 0, 0}, n, RangeMethod::transitive_renewal);
            double spread = std::max({std::fabs(e - t), std::fabs(e - r), std::fabs(t - r)});
            ck.require(spread <= 1e-10, c.g.identity() + " n=" + std::to_string(n) +
                                            " three-way spread <= 1e-10 (got " + fmt(spread) + ")");
            if (n == 2) {
                // E[R_2] = 1 + 1 + (1 - 1/deg): 11/4 on square, 23/8 on king
                double want = c.g.kind() == GraphKind::square ? 2.75 : 2.875;
                ck.require(e == want && r == want, c.g.identity() + " E[R_2] = " + fmt(want) +
                                                       " exactly (got " + fmt(e) + ")");
            }
        }
        ck.info(c.g.identity() + " to n=" + std::to_string(c.nmax) + " ok");
    }
    return {"C4", "expected-range three-way agreement", ck.pass, ck.detail.str(), 0};
}

// --- 5. scaled expected range trend toward pi --------------------------------
inline CriterionResult c5(VerifyProfile p) {
    Check ck;
    std::vector<std::uint64_t> grid = p == VerifyProfile::full
                                          ? std::vector<std::uint64_t>{10000, 100000, 1000000}
                                          : std::vector<std::uint64_t>{1000, 10000};
    auto sv = survival_from_returns(z2::diagonal_series(grid.back()));
    auto recs = scaled_range_exact("square", sv, grid);
    double prev_gap = 1e300;
    for (const auto& r : recs) {
        double gap = std::fabs(r.value - kPiConst);
        ck.require(gap < prev_gap, "|E[R_n] log n / n - pi| decreasing at n=" +
                                       std::to_string(r.n) + " (got " + fmt(gap) + ")");
        prev_gap = gap;
        ck.info("n=" + std::to_string(r.n) + ":" + fmt(r.value));
    }
    ck.require(prev_gap <= 0.25 * kPiConst,
               "final value within 25% of pi (gap " + fmt(prev_gap) + ")");
    return {"C5", "scaled range trend to pi", ck.pass, ck.detail.str(), 0};
}

// --- 6. finite-modification stability ----------------------------------------
inline CriterionResult c6(VerifyProfile p, unsigned workers, std::uint64_t seed) {
    Check ck;
    std::uint64_t n = p == VerifyProfile::full ? 100000 : 10000;
    std::uint64_t replicas = p == VerifyProfile::full ? 200 : 100;
    auto base = GraphSpec::square();
    auto mod = GraphSpec::finite_modification(GraphKind::square, diagonal_ball_patch(5));
    double f = std::log(double(n)) / double(n);
    std::vector<double> diff(replicas), base_scaled(replicas);
    parallel_for(replicas, workers, [&](std::uint64_t rep) {
        auto tb = simulate(base, {0, 0, 0}, n, RngStream(seed, rep));
        auto tm = simulate(mod, {0, 0, 0}, n, RngStream(seed, rep));
        base_scaled[rep] = double(tb.range) * f;
        diff[rep] = double(tm.range) * f - base_scaled[rep];
    });
    auto ds = sample_stats(diff);
    auto bs = sample_stats(base_scaled);
    double tol = std::max(3.0 * ds.se(), 0.02 * bs.mean);
    ck.require(std::fabs(ds.mean) <= tol, "|paired scaled difference| <= max(3 se, 2% of base) (" +
                                              fmt(std::fabs(ds.mean)) + " vs " + fmt(tol) + ")");
    ck.info("diff=" + fmt(ds.mean) + " se=" + fmt(ds.se()) + " base=" + fmt(bs.mean) +
            " n=" + std::to_string(n) + " replicas=" + std::to_string(replicas));
    return {"C6", "finite-modification stability (paired seeds)", ck.pass, ck.detail.str(), 0};
}

// --- 7. hybrid locality -------------------------------------------------------
inline CriterionResult c7(VerifyProfile) {
    Check ck;
    const int k = 64;
    auto hy = GraphSpec::hybrid();
    auto king_rs = return_series(GraphSpec::king(), {0, 0, 0}, k);
    auto sq_rs = return_series(GraphSpec::square(), {0, 0, 0}, k);
    auto deep_king = return_series(hy, {1000, 0, 0}, k);  // depth 744 in [256, 65536)
    auto deep_sq = return_series(hy, {136, 0, 0}, k);     // depth 119 in [16, 256)
    double worst_k = 0.0, worst_s = 0.0;
    for (int j = 0; j <= k; ++j) {
        worst_k = std::max(worst_k, std::fabs(deep_king.p[j] - king_rs.p[j]));
        worst_s = std::max(worst_s, std::fabs(deep_sq.p[j] - sq_rs.p[j]));
    }
    ck.require(worst_k <= 1e-12, "king-annulus diagonal matches king lattice (got " +
                                     fmt(worst_k) + ")");
    ck.require(worst_s <= 1e-12,
               "square-gap diagonal matches square lattice (got " + fmt(worst_s) + ")");
    ck.info("king-regime dev=" + fmt(worst_k) + " square-regime dev=" + fmt(worst_s) +
            " horizon=" + std::to_string(k));
    return {"C7", "hybrid annulus locality", ck.pass, ck.detail.str(), 0};
}

// --- 8. far-target hitting bound ----------------------------------------------
inline CriterionResult c8(VerifyProfile p) {
    Check ck;
    std::vector<int> grid = p == VerifyProfile::full ? std::vector<int>{256, 1024, 4096}
                                                     : std::vector<int>{256, 1024};
    double prev = -1.0;
    for (int n : grid) {
        auto res = hit_bound_check(GraphSpec::square(), {0, 0, 0}, n);
        ck.require(res.realized_constant <= 10.0,
                   "constant <= 10 at n=" + std::to_string(n) + " (got " +
                       fmt(res.realized_constant) + ")");
        if (prev > 0.0)
            ck.require(res.realized_constant <= 1.2 * prev,
                       "per-step growth <= 20% at n=" + std::to_string(n) + " (" +
                           fmt(res.realized_constant / prev - 1.0) + ")");
        ck.info("n=" + std::to_string(n) + ":" + fmt(res.realized_constant) +
                "(rc=" + std::to_string(res.critical_radius) + ")");
        prev = res.realized_constant;
    }
    return {"C8", "far-target hitting constants", ck.pass, ck.detail.str(), 0};
}

// --- 9. intersection moment scans ----------------------------------------------
inline CriterionResult c9(VerifyProfile p, unsigned workers, std::uint64_t seed) {
    Check ck;
    std::vector<std::uint64_t> grid;
    std::uint64_t replicas = p == VerifyProfile::full ? 500 : 200;
    if (p == VerifyProfile::full)
        for (std::uint64_t n = 1024; n <= 65536; n *= 2) grid.push_back(n);
    else
        grid = {1024, 4096};
    double i2_min = 1e300, i2_max = 0.0, j_min = 1e300, j_max = 0.0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        std::uint64_t n = grid[gi];
        std::vector<double> self_s(replicas), two_s(replicas);
        parallel_for(replicas, workers, [&](std::uint64_t rep) {
            std::uint64_t base = 2 * (gi * replicas + rep);
            self_s[rep] =
                double(self_intersection(GraphSpec::square(), {0, 0, 0}, n, RngStream(seed, base))
                           .value);
            two_s[rep] = double(two_walk_intersection(GraphSpec::square(), {0, 0, 0}, n,
                                                      RngStream(seed + 1, base),
                                                      RngStream(seed + 1, base + 1)));
        });
        auto pt = intersection_moment_point(n, self_s, two_s);
        i2_min = std::min(i2_min, pt.i2_normalized);
        i2_max = std::max(i2_max, pt.i2_normalized);
        j_min = std::min(j_min, pt.j_normalized);
        j_max = std::max(j_max, pt.j_normalized);
        ck.require(pt.moment_ok, "factorial moment bound (p=2,3) at n=" + std::to_string(n));
        ck.info("n=" + std::to_string(n) + " I2n=" + fmt(pt.i2_normalized) +
                " Jn=" + fmt(pt.j_normalized));
    }
    ck.require(i2_max / i2_min <= 4.0,
               "self-intersection ratio grid max/min <= 4 (got " + fmt(i2_max / i2_min) + ")");
    ck.require(j_max / j_min <= 4.0,
               "two-walk ratio grid max/min <= 4 (got " + fmt(j_max / j_min) + ")");

    std::uint64_t j1_reps = p == VerifyProfile::full ? 100000 : 20000;
    std::vector<double> j1(j1_reps);
    parallel_for(j1_reps, workers, [&](std::uint64_t rep) {
        j1[rep] = double(two_walk_intersection(GraphSpec::square(), {0, 0, 0}, 1,
                                               RngStream(seed + 2, 2 * rep),
                                               RngStream(seed + 2, 2 * rep + 1)));
    });
    auto j1s = sample_stats(j1);
    ck.require(std::fabs(j1s.mean - 1.25) <= 4.0 * j1s.se(),
               "E[J_1] within 4 se of 5/4 (got " + fmt(j1s.mean) + ")");
    return {"C9", "intersection moment scans", ck.pass, ck.detail.str(), 0};
}

// --- 10. isoradial geometry ------------------------------------------------------
inline CriterionResult c10(VerifyProfile) {
    Check ck;
    const double sq2 = std::sqrt(2.0), sq3 = std::sqrt(3.0);
    struct Want {
        TilingKind kind;
        const char* name;
        double primal, dual;
    };
    for (const auto& w : {Want{TilingKind::square, "square", sq2, sq2},
                          Want{TilingKind::triangular, "triangular", sq3, 1.0},
                          Want{TilingKind::hexagonal, "hexagonal", 1.0, sq3}}) {
        auto g = generate_isoradial(w.kind, 3);
        auto cert = verify_isoradial(g);
        ck.require(cert.pass, std::string(w.name) + " passes at tau=1e-9");
        if (!cert.pass) continue;
        auto b = edge_and_dual_bounds(cert);
        double dev = std::max({std::fabs(b.c1 - w.primal), std::fabs(b.c2 - w.primal),
                               std::fabs(b.c1_dual - w.dual), std::fabs(b.c2_dual - w.dual)});
        ck.require(dev <= 1e-9,
                   std::string(w.name) + " edge/dual constants to 1e-9 (got " + fmt(dev) + ")");
        // displace a vertex radially off its face's circumcircle by 10 tau
        // (a tangential shift would stay on the circle to first order)
        auto wiggled = g;
        std::int32_t v = g.faces[0][0];
        double dx = g.x[v] - cert.faces[0].cx, dy = g.y[v] - cert.faces[0].cy;
        double norm = std::hypot(dx, dy);
        wiggled.x[v] += 1e-8 * dx / norm;
        wiggled.y[v] += 1e-8 * dy / norm;
        ck.require(!verify_isoradial(wiggled).pass,
                   std::string(w.name) + " rejects a 10-tau radial displacement");
    }
    double ratio = block_isoperimetric_min_ratio(GraphSpec::square(), 32);
    ck.require(ratio == 4.0, "block isoperimetric min ratio exactly 4 (got " + fmt(ratio) + ")");
    ck.info("block-min-ratio=" + fmt(ratio));
    return {"C10", "isoradial geometry", ck.pass, ck.detail.str(), 0};
}

// --- 11. lamplighter bracket -------------------------------------------------------
inline CriterionResult c11(VerifyProfile p, unsigned workers, std::uint64_t seed) {
    Check ck;
    std::uint64_t trials = p == VerifyProfile::full ? 1000 : 200;
    std::vector<SmallGraph> bases = {SmallGraph::path(4),  SmallGraph::path(7),
                                     SmallGraph::cycle(6), SmallGraph::cycle(9),
                                     SmallGraph::grid(3, 3), SmallGraph::grid(2, 5)};
    RngStream rng(seed, 0);
    std::uint64_t violations = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto& g = bases[rng.next_index(static_cast<std::uint32_t>(bases.size()))];
        SmallWreathState a, b;
        a.walker = static_cast<int>(rng.next_index(g.size()));
        b.walker = static_cast<int>(rng.next_index(g.size()));
        a.lamps = static_cast<std::uint32_t>(rng.next_u64() & ((1u << g.size()) - 1));
        b.lamps = static_cast<std::uint32_t>(rng.next_u64() & ((1u << g.size()) - 1));
        int d = wreath_distance_exact(g, a, b);
        auto br = small_distance_bracket(g, a, b);
        if (std::uint64_t(d) < br.lower || std::uint64_t(d) > br.upper) ++violations;
    }
    ck.require(violations == 0, "exact distance inside [LB, UB] on all " + std::to_string(trials) +
                                    " pairs (violations " + std::to_string(violations) + ")");

    std::uint64_t nmax = p == VerifyProfile::full ? 10000 : 2048;
    std::uint64_t replicas = p == VerifyProfile::full ? 100 : 50;
    std::vector<std::uint64_t> grid;
    for (std::uint64_t n = 128; n < nmax; n *= 2) grid.push_back(n);
    grid.push_back(nmax);
    std::vector<std::vector<double>> ub(grid.size(), std::vector<double>(replicas, 0.0));
    std::vector<std::uint8_t> lamp_ok(replicas, 1);
    parallel_for(replicas, workers, [&](std::uint64_t rep) {
        SwsWalk w(GraphSpec::square(), {0, 0, 0}, RngStream(seed + 3, rep));
        std::size_t gi = 0;
        for (std::uint64_t t = 0; t <= grid.back(); ++t) {
            if (t > 0) w.step();
            while (gi < grid.size() && grid[gi] == t) {
                auto lamps = w.state().lit_lamps();
                if (lamps.size() > w.range()) lamp_ok[rep] = 0;
                auto br = distance_bracket(GraphSpec::square(), lamps, {0, 0, 0}, w.walker());
                if (br.lower > br.upper) lamp_ok[rep] = 0;
                ub[gi][rep] = double(br.upper) * std::log(double(t)) / double(t);
                ++gi;
            }
        }
    });
    bool all_ok = true;
    for (auto ok : lamp_ok) all_ok = all_ok && ok;
    ck.require(all_ok, "lamp support within the visited range on every replica");
    double lo = 1e300, hi = 0.0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        auto st = sample_stats(ub[gi]);
        lo = std::min(lo, st.mean);
        hi = std::max(hi, st.mean);
    }
    ck.require(hi / lo <= 3.0, "scaled UB grid max/min <= 3 (got " + fmt(hi / lo) + ")");
    ck.info("ub-range=[" + fmt(lo) + "," + fmt(hi) + "]");
    return {"C11", "lamplighter bracket soundness", ck.pass, ck.detail.str(), 0};
}

// --- 12. determinism and small-n identities -------------------------------------------
inline CriterionResult c12(VerifyProfile p, unsigned workers, std::uint64_t seed) {
    (void)workers;
    Check ck;
    // (a) byte-identical CSV bodies across 1, 4, 16 workers
    {
        std::string cfg_text =
            "graph.kind = square\n"
            "run.op = mc-range\n"
            "run.n_grid = 64,256,1024\n"
            "run.replicas = 64\n"
            "run.seed = " + std::to_string(seed) + "\n";
        auto cfg = parse_config_text(cfg_text);
        auto a1 = run_config(cfg, 1);
        auto a4 = run_config(cfg, 4);
        auto a16 = run_config(cfg, 16);
        ck.require(a1.estimates_csv == a4.estimates_csv && a4.estimates_csv == a16.estimates_csv,
                   "estimate CSV bodies identical across 1/4/16 workers");
        ck.require(a1.samples_csv == a4.samples_csv && a4.samples_csv == a16.samples_csv,
                   "sample CSV bodies identical across 1/4/16 workers");
    }
    // (b) pathwise last-exit identity on retained traces
    {
        std::uint64_t n = p == VerifyProfile::full ? 10000 : 1000;
        WalkOptions opt;
        opt.keep_positions = true;
        int failures = 0;
        for (std::uint64_t rep = 0; rep < 100; ++rep) {
            auto tr = simulate(GraphSpec::square(), {0, 0, 0}, n, RngStream(seed + 7, rep), opt);
            if (!pathwise_last_exit_check(tr)) ++failures;
        }
        ck.require(failures == 0, "pathwise last-exit identity on 100/100 traces (failures " +
                                      std::to_string(failures) + ")");
    }
    // (c) small-n empirical identities within 4 standard errors
    {
        std::uint64_t reps = p == VerifyProfile::full ? 100000 : 20000;
        std::uint64_t hits2 = 0;
        double r2sum = 0.0, i1sum = 0.0;
        for (std::uint64_t rep = 0; rep < reps; ++rep) {
            auto tr = simulate(GraphSpec::square(), {0, 0, 0}, 2, RngStream(seed + 8, rep));
            if (tr.first_return && *tr.first_return == 2) ++hits2;
            r2sum += double(tr.range);
            i1sum += double(
                self_intersection(GraphSpec::square(), {0, 0, 0}, 1, RngStream(seed + 9, rep))
                    .value);
        }
        double p2 = double(hits2) / double(reps);
        double se2 = std::sqrt(0.25 * 0.75 / double(reps));
        ck.require(std::fabs(p2 - 0.25) <= 4 * se2, "p2_hat within 4 se of 1/4 (got " + fmt(p2) + ")");
        double er2 = r2sum / double(reps);
        double ser = std::sqrt(3.0 / 16.0 / double(reps));
        ck.require(std::fabs(er2 - 2.75) <= 4 * ser,
                   "E[R_2] hat within 4 se of 11/4 (got " + fmt(er2) + ")");
        double ei1 = i1sum / double(reps);
        ck.require(std::fabs(ei1 - 1.25) <= 4 * se2,
                   "E[I_1] hat within 4 se of 5/4 (got " + fmt(ei1) + ")");
        ck.info("p2=" + fmt(p2) + " ER2=" + fmt(er2) + " EI1=" + fmt(ei1));
    }
    return {"C12", "determinism and small-n identities", ck.pass, ck.detail.str(), 0};
}

}  // namespace verify_detail

inline std::vector<CriterionResult> run_verification(VerifyProfile profile, unsigned workers,
                                                     std::uint64_t seed = kVerifySeed) {
    using namespace verify_detail;
    std::vector<CriterionResult> out;
    auto timed = [&](CriterionResult (*fn)(VerifyProfile)) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = fn(profile);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    };
    auto timed_mc = [&](CriterionResult (*fn)(VerifyProfile, unsigned, std::uint64_t)) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = fn(profile, workers, seed);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    };
    timed(c1);
    timed(c2);
    timed(c3);
    timed(c4);
    timed(c5);
    timed_mc(c6);
    timed(c7);
    timed(c8);
    timed_mc(c9);
    timed(c10);
    timed_mc(c11);
    timed_mc(c12);
    return out;
}

// the statements that are out of reach at desk scale, reported alongside
// the verification results
inline std::vector<std::string> declared_out_of_reach() {
    return {
        "exact values of the almost-sure liminf/limsup range constants (proxies only)",
        "almost-sure fluctuation of the hybrid graph's scaled range (doubly-exponential scales)",
        "sharp lamplighter displacement constants (brackets only)",
    };
}

}  // namespace rangelab
