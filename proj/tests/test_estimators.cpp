#include <doctest.h>

#include <cmath>

#include "rangelab/estimators.hpp"
#include "rangelab/range_exact.hpp"
#include "rangelab/walk.hpp"
#include "rangelab/z2_series.hpp"

using namespace rangelab;

static constexpr double kPi = 3.14159265358979323846;

TEST_CASE("estimate records enforce their provenance invariants") {
    auto ex = exact_record("stat", "square", 10, 1.0);
    CHECK(ex.dispersion == 0.0);
    CHECK_THROWS_AS(mc_record("stat", "square", 10, 1.0, 0.1, 1, 7), malformed_input_error);
    auto mc = mc_record("stat", "square", 10, 1.0, 0.1, 50, 7);
    CHECK(mc.replicas == 50);
}

TEST_CASE("scaled expected range approaches pi from below on Z^2") {
    auto p = z2::diagonal_series(100000);
    auto sv = survival_from_returns(p);
    auto recs = scaled_range_exact("square", sv, {1000, 10000, 100000});
    REQUIRE(recs.size() == 3);
    double prev_gap = 10.0;
    for (const auto& r : recs) {
        double gap = std::fabs(r.value - kPi);
        CHECK(gap < prev_gap);
        prev_gap = gap;
        CHECK(r.value < kPi);
        CHECK(r.method == Method::exact);
    }
    // injective-walk arithmetic: R_n = n + 1 scales to (n+1) log n / n
    auto rec = scaled_range_mc("halfline", 100, std::vector<double>(5, 101.0), 1);
    CHECK(rec.value == doctest::Approx(101.0 * std::log(100.0) / 100.0));
    CHECK(rec.dispersion == 0.0);
    // n < 3 is rejected (the log log normalizations degenerate downstream)
    CHECK_THROWS_AS(scaled_range_mc("square", 2, std::vector<double>(5, 3.0), 1),
                    malformed_input_error);
    CHECK_THROWS_AS(scaled_range_exact("square", sv, {2}), malformed_input_error);
}

TEST_CASE("r-bounds: min equals max exactly on a vertex-transitive sample") {
    auto g = GraphSpec::square();
    auto rs = return_series(g, {0, 0, 0}, 512);
    auto sv = survival(first_return(rs));
    auto rs2 = return_series(g, {5, -3, 0}, 512);
    auto sv2 = survival(first_return(rs2));
    auto pts = r_bounds_estimate({sv, sv2}, {16, 64, 256, 512});
    for (const auto& pt : pts) {
        CHECK(pt.lower == pt.upper);
        CHECK(pt.lower > 0.0);
    }
    CHECK_THROWS_AS(r_bounds_estimate({}, {16}), malformed_input_error);
}

TEST_CASE("survival-sum residual shrinks and the range sandwich holds at n = 1000") {
    // |q(n) sum_{k=1..n} p_k - 1| <= 0.5 by n = 1000, with a decreasing trend
    for (auto g : {GraphSpec::square(), GraphSpec::king()}) {
        auto rs = return_series(g, {0, 0, 0}, 1000);
        auto sv = survival(first_return(rs));
        auto resid = [&](std::size_t n) {
            double s = 0.0;
            for (std::size_t k = 1; k <= n; ++k) s += rs.p[k];
            return std::fabs(sv.q[n] * s - 1.0);
        };
        CHECK(resid(1000) <= 0.5);
        CHECK(resid(1000) < resid(64));

        double er = 0.0;
        for (int m = 0; m <= 1000; ++m) er += sv.q[m];
        double scaled = er * std::log(1000.0) / 1000.0;
        double lower = 0.8 * std::log(1000.0) * sv.q[1000];
        double upper = 1.25 * std::log(1000.0) * sv.q[1000 / 7];  // floor(n / log n) = 144
        CHECK(scaled >= lower);
        CHECK(scaled <= upper);
    }
}

TEST_CASE("king scaled range and survival bounds climb toward 3 pi / 2") {
    auto g = GraphSpec::king();
    auto rs = return_series(g, {0, 0, 0}, 512);
    auto sv = survival(first_return(rs));
    auto recs = scaled_range_exact(g.identity(), sv, {128, 256, 512});
    const double target = 1.5 * kPi;
    CHECK(recs[0].value < recs[1].value);
    CHECK(recs[1].value < recs[2].value);
    CHECK(recs[2].value < target);
    auto pts = r_bounds_estimate({sv}, {128, 256, 512});
    CHECK(pts[0].upper < pts[1].upper);
    CHECK(pts[1].upper < pts[2].upper);
    CHECK(pts[2].upper < target);
}

TEST_CASE("empirical tail probability is nonincreasing across the grid at a = 2") {
    auto g = GraphSpec::square();
    auto collect = [&](std::uint64_t n) {
        std::vector<double> ranges;
        for (std::uint64_t r = 0; r < 2000; ++r)
            ranges.push_back(double(simulate(g, {0, 0, 0}, n, RngStream(29, r)).range));
        return tail_probability(n, 2.0, ranges);
    };
    auto lo = collect(64);
    auto hi = collect(4096);
    CHECK(hi.probability <= lo.probability + 2.0 * (lo.se + hi.se));
}

TEST_CASE("tail probabilities: a = 0 gives 0, a = log n gives 1") {
    auto g = GraphSpec::square();
    const std::uint64_t n = 64;
    std::vector<double> ranges;
    for (std::uint64_t r = 0; r < 10000; ++r)
        ranges.push_back(double(simulate(g, {0, 0, 0}, n, RngStream(3, r)).range));
    auto zero = tail_probability(n, 0.0, ranges);
    CHECK(zero.probability == 0.0);
    auto one = tail_probability(n, std::log(double(n)), ranges);
    CHECK(one.probability == 1.0);
    auto mid = tail_probability(n, 2.0, ranges);
    CHECK(mid.probability >= 0.0);
    CHECK(mid.probability <= 1.0);
    CHECK(mid.se >= 0.0);
    CHECK_THROWS_AS(tail_probability(n, 1.0, std::vector<double>(10, 1.0)),
                    malformed_input_error);
}

TEST_CASE("intersection moment scan at a reduced scale") {
    auto g = GraphSpec::square();
    std::vector<std::uint64_t> grid{256, 1024};
    std::vector<MomentScanPoint> pts;
    for (std::uint64_t n : grid) {
        std::vector<double> self_s, two_s;
        for (std::uint64_t r = 0; r < 250; ++r) {
            self_s.push_back(double(self_intersection(g, {0, 0, 0}, n, RngStream(50, r)).value));
            two_s.push_back(double(two_walk_intersection(g, {0, 0, 0}, n, RngStream(51, 2 * r),
                                                         RngStream(51, 2 * r + 1))));
        }
        pts.push_back(intersection_moment_point(n, self_s, two_s));
    }
    for (const auto& pt : pts) {
        CHECK(pt.i2_normalized > 0.0);
        CHECK(pt.j_normalized > 0.0);
        CHECK(pt.moment_ok);  // (p!)^2 cushion at p = 2, 3
    }
    // p = 1 case of the moment bound is an identity
    CHECK(pts[0].j_mean <= pts[0].j_mean + 3 * pts[0].j_se);
}

TEST_CASE("ahlfors fit: alpha = 2 on square and king") {
    // lower-order ball terms bias the log-log slope at small radii, so the
    // fit grid starts at 16
    RegularityReport rep;
    ahlfors_fit(GraphSpec::square(), {Vertex{0, 0, 0}}, {16, 32, 64, 128, 256}, rep);
    CHECK(std::fabs(rep.alpha - 2.0) <= 0.05);
    CHECK(rep.c1 <= rep.c2);

    RegularityReport repk;
    ahlfors_fit(GraphSpec::king(), {Vertex{0, 0, 0}}, {16, 32, 64, 128, 256}, repk);
    CHECK(std::fabs(repk.alpha - 2.0) <= 0.05);
    // |B(0,r)| = (2r+1)^2 exactly on the king lattice
    CHECK(Ball(GraphSpec::king(), {0, 0, 0}, 16).size() == 33 * 33);
}

TEST_CASE("on-diagonal window: 2/pi on square, 4/(3 pi) on king, split window on hybrid") {
    auto sq = GraphSpec::square();
    RegularityReport rep;
    on_diagonal_window({return_series(sq, {0, 0, 0}, 1001)}, {998, 1000}, rep);
    CHECK(rep.window_min == doctest::Approx(2.0 / kPi).epsilon(0.01));
    CHECK(rep.window_max == doctest::Approx(2.0 / kPi).epsilon(0.01));

    auto kg = GraphSpec::king();
    RegularityReport repk;
    on_diagonal_window({return_series(kg, {0, 0, 0}, 513)}, {256, 512}, repk);
    CHECK(repk.window_min == doctest::Approx(4.0 / (3.0 * kPi)).epsilon(0.02));
    CHECK(repk.window_max == doctest::Approx(4.0 / (3.0 * kPi)).epsilon(0.02));

    // k p_{2k} -> 1/pi reading of the same limit
    auto rs = return_series(sq, {0, 0, 0}, 1000);
    CHECK(500.0 * rs.p[1000] == doctest::Approx(1.0 / kPi).epsilon(0.01));

    auto hy = GraphSpec::hybrid();
    RegularityReport reph;
    on_diagonal_window({return_series(hy, {136, 0, 0}, 65), return_series(hy, {1000, 0, 0}, 65)},
                       {32, 64}, reph);
    CHECK(reph.window_min > 0.0);
    CHECK(reph.window_min < reph.window_max);
}

TEST_CASE("subgaussian fit on Z^2: positive envelopes, beta fixed at 2") {
    RegularityReport rep;
    subgaussian_fit(GraphSpec::square(), {0, 0, 0}, {64, 128, 256}, {2, 4, 8, 12}, rep);
    CHECK(rep.beta == 2.0);
    CHECK(rep.c4 > 0.0);
    CHECK(rep.c3 > 0.0);
    CHECK(rep.c5 > 0.0);
    CHECK(rep.c5 < 1e300);
    CHECK(rep.c6 >= rep.c4);  // lower envelope decays at least as fast
}

TEST_CASE("exit time profile: E[T]/r^2 stable within a factor of 2 on Z^2") {
    RegularityReport rep;
    exit_time_profile(GraphSpec::square(), {Vertex{0, 0, 0}}, {4, 8, 16, 32, 64}, rep);
    CHECK(rep.exit_min_ratio > 0.0);
    CHECK(rep.exit_max_ratio / rep.exit_min_ratio <= 2.0);
}
