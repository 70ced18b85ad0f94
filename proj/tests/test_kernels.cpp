#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rangelab/heat_kernel.hpp"
#include "rangelab/killed.hpp"
#include "rangelab/range_exact.hpp"
#include "rangelab/series.hpp"
#include "rangelab/z2_series.hpp"

using namespace rangelab;

TEST_CASE("square heat kernel small values") {
    auto g = GraphSpec::square();
    auto rs = return_series(g, {0, 0, 0}, 8);
    CHECK(rs.p[0] == 1.0);
    CHECK(rs.p[1] == 0.0);
    CHECK(rs.p[2] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(rs.p[3] == 0.0);
    CHECK(rs.p[4] == doctest::Approx(9.0 / 64.0).epsilon(1e-14));
}

TEST_CASE("king heat kernel small values (aperiodic, p_3 > 0)") {
    auto g = GraphSpec::king();
    auto rs = return_series(g, {0, 0, 0}, 4);
    CHECK(rs.p[2] == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
    CHECK(rs.p[3] > 0.0);
    // enumeration oracle for the length-3 closed king walks
    auto brute = oracles::enumerate_paths(
        g, {0, 0, 0}, 3, [](const std::vector<Vertex>& path) {
            return path.back() == Vertex{0, 0, 0} ? 1.0 : 0.0;
        });
    CHECK(rs.p[3] == doctest::Approx(brute).epsilon(1e-13));
    CHECK(brute == doctest::Approx(3.0 / 64.0).epsilon(1e-13));
}

TEST_CASE("kernel vs dense matrix-power oracle on square and hybrid") {
    for (auto g : {GraphSpec::square(), GraphSpec::hybrid()}) {
        Vertex x{3, 1, 0};
        int n = 6;
        oracles::MatrixPower mp(g, x, n);
        auto mu = mp.distribution(n);
        auto row = heat_kernel_row(g, x, n);
        const auto& kv = row.back();
        for (std::size_t k = 0; k < mp.ball.size(); ++k) {
            CHECK(kv.at(mp.ball.vertices()[k]) == doctest::Approx(mu[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("mass conservation within 16 n eps") {
    auto g = GraphSpec::king();
    KernelDomain dom(g, {0, 0, 0}, 64);
    HeatKernelRun run(dom);
    for (int t = 1; t <= 64; ++t) {
        run.step();
        double tol = 16.0 * t * 2.220446049250313e-16;
        CHECK(std::fabs(run.total_mass() - 1.0) <= tol);
    }
}

TEST_CASE("Z^2 closed form vs kernel to 1e-12 for j <= 64") {
    auto g = GraphSpec::square();
    auto rs = return_series(g, {0, 0, 0}, 128);
    for (int j = 1; j <= 64; ++j) {
        double oracle = oracles::z2_diagonal_exact(j);
        CHECK(std::fabs(rs.p[2 * j] - oracle) <= 1e-12);
        // the library's own closed-form series must match the big-int oracle
        CHECK(std::fabs(z2::diagonal_series(128)[2 * j] - oracle) <= 1e-14);
    }
}

TEST_CASE("reversibility deg(x) p_n(x,y) = deg(y) p_n(y,x) on a degree-mixed patch") {
    auto g = GraphSpec::finite_modification(GraphKind::square, demo_patch());
    Vertex x{0, 0, 0};  // degree 5
    int n = 10;
    auto from_x = heat_kernel_row(g, x, n).back();
    Ball targets(g, x, 4);
    for (const Vertex& y : targets.vertices()) {
        auto from_y = heat_kernel_row(g, y, n).back();
        CHECK(std::fabs(g.degree(x) * from_x.at(y) - g.degree(y) * from_y.at(x)) <= 1e-12);
    }
}

TEST_CASE("first return and survival on Z^2") {
    auto g = GraphSpec::square();
    auto rs = return_series(g, {0, 0, 0}, 16);
    auto fr = first_return(rs);
    CHECK(fr.f[1] == 0.0);
    CHECK(fr.f[2] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(fr.f[3] == 0.0);
    CHECK(fr.f[4] == doctest::Approx(5.0 / 64.0).epsilon(1e-14));
    auto sv = survival(fr);
    CHECK(sv.q[0] == 1.0);
    CHECK(sv.q[1] == 1.0);
    CHECK(sv.q[2] == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(sv.q[4] == doctest::Approx(43.0 / 64.0).epsilon(1e-14));
    for (std::size_t m = 1; m < sv.q.size(); ++m) CHECK(sv.q[m] <= sv.q[m - 1]);
}

TEST_CASE("renewal identity reconstructs the return series") {
    for (auto g : {GraphSpec::square(), GraphSpec::king()}) {
        auto rs = return_series(g, {0, 0, 0}, 128);
        auto fr = first_return(rs);
        CHECK(fr.worst_negative >= -1e-12);
        CHECK(renewal_reconstruction_residual(rs, fr) <= 1e-10);
        double cum = 0.0;
        for (double f : fr.f) {
            cum += f;
            CHECK(cum <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("last-exit identity residual at small horizons") {
    auto g = GraphSpec::square();
    auto rs = return_series(g, {0, 0, 0}, 128);
    auto sv = survival(first_return(rs));
    // m = 2 by hand: q(2) + 0 + p_2 q(0) = 3/4 + 1/4 = 1
    double m2 = rs.p[0] * sv.q[2] + rs.p[1] * sv.q[1] + rs.p[2] * sv.q[0];
    CHECK(m2 == 1.0);
    CHECK(last_exit_identity_check(rs, sv, 128) <= 1e-10);
}

TEST_CASE("survival via divide-and-conquer inversion matches the direct recursion") {
    auto g = GraphSpec::king();
    auto rs = return_series(g, {0, 0, 0}, 600);
    auto direct = survival(first_return(rs));
    auto fast = survival_from_returns(rs.p);
    for (std::size_t m = 0; m < rs.p.size(); ++m)
        CHECK(fast.q[m] == doctest::Approx(direct.q[m]).epsilon(1e-11));
}

TEST_CASE("hitting probabilities small cases") {
    auto g = GraphSpec::square();
    CHECK(hitting_probability(g, {0, 0, 0}, {1, 0, 0}, 1) == doctest::Approx(0.25).epsilon(1e-14));
    // return convention: P(T_x <= 2) = f_2
    CHECK(hitting_probability(g, {0, 0, 0}, {0, 0, 0}, 2) == doctest::Approx(0.25).epsilon(1e-14));
    // two-step paths to the diagonal neighbor
    CHECK(hitting_probability(g, {0, 0, 0}, {1, 1, 0}, 2) ==
          doctest::Approx(2.0 / 16.0).epsilon(1e-14));
    // first-visit convention at the start vertex is trivially 1
    CHECK(hitting_probability(g, {0, 0, 0}, {0, 0, 0}, 2, HitConvention::first_visit) == 1.0);
    // finite speed
    CHECK(hitting_probability(g, {0, 0, 0}, {4, 4, 0}, 7) == 0.0);
}

TEST_CASE("closed-form hitting series agrees with the absorbing kernel") {
    auto g = GraphSpec::square();
    for (auto [a, b] : {std::pair{1, 0}, std::pair{1, 1}, std::pair{3, 2}}) {
        auto fast = z2::hitting_series(40, a, b);
        auto slow = hitting_series(g, {0, 0, 0}, {a, b, 0}, 40);
        for (int m = 0; m <= 40; ++m) CHECK(fast[m] == doctest::Approx(slow[m]).epsilon(1e-10));
    }
    // deeper horizon at one target, to bound the deconvolution drift
    auto fast = z2::hitting_series(200, 2, 1);
    auto slow = hitting_series(g, {0, 0, 0}, {2, 1, 0}, 200);
    CHECK(std::fabs(fast[200] - slow[200]) <= 1e-9);
}

TEST_CASE("killed Green function") {
    auto g = GraphSpec::square();
    auto single = killed_green(g, {Vertex{0, 0, 0}}, Vertex{0, 0, 0});
    CHECK(single.at(Vertex{0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));

    auto b1 = killed_green_ball(g, {0, 0, 0}, 1);
    CHECK(b1.at(Vertex{0, 0, 0}) == doctest::Approx(4.0 / 3.0).epsilon(1e-11));
    CHECK(b1.values[0] >= 1.0);

    // monotonicity in the domain
    auto b2 = killed_green_ball(g, {0, 0, 0}, 2);
    auto b3 = killed_green_ball(g, {0, 0, 0}, 3);
    CHECK(b1.at(Vertex{0, 0, 0}) <= b2.at(Vertex{0, 0, 0}));
    CHECK(b2.at(Vertex{0, 0, 0}) <= b3.at(Vertex{0, 0, 0}));

    CHECK_THROWS_AS(killed_green(g, {Vertex{0, 0, 0}}, Vertex{5, 5, 0}), malformed_input_error);
}

TEST_CASE("expected exit times") {
    auto g = GraphSpec::square();
    CHECK(expected_exit_time(g, {0, 0, 0}, 0) == 1.0);
    CHECK(expected_exit_time(g, {0, 0, 0}, 1) == doctest::Approx(8.0 / 3.0).epsilon(1e-11));
}

TEST_CASE("expected range: three methods agree; E[R_2] = 11/4 exactly") {
    auto sq = GraphSpec::square();
    CHECK(expected_range_exact(sq, {0, 0, 0}, 1, RangeMethod::enumeration) == 2.0);
    CHECK(expected_range_exact(sq, {0, 0, 0}, 2, RangeMethod::enumeration) == 2.75);
    CHECK(expected_range_exact(sq, {0, 0, 0}, 2, RangeMethod::transitive_renewal) ==
          doctest::Approx(2.75).epsilon(1e-14));
    CHECK(expected_range_exact(sq, {0, 0, 0}, 2, RangeMethod::per_target) ==
          doctest::Approx(2.75).epsilon(1e-12));
    for (int n : {3, 5, 8}) {
        double e = expected_range_exact(sq, {0, 0, 0}, n, RangeMethod::enumeration);
        double p = expected_range_exact(sq, {0, 0, 0}, n, RangeMethod::per_target);
        double r = expected_range_exact(sq, {0, 0, 0}, n, RangeMethod::transitive_renewal);
        CHECK(std::fabs(e - p) <= 1e-10);
        CHECK(std::fabs(e - r) <= 1e-10);
    }
    auto kg = GraphSpec::king();
    for (int n : {2, 4, 6}) {
        double e = expected_range_exact(kg, {0, 0, 0}, n, RangeMethod::enumeration);
        double p = expected_range_exact(kg, {0, 0, 0}, n, RangeMethod::per_target);
        double r = expected_range_exact(kg, {0, 0, 0}, n, RangeMethod::transitive_renewal);
        CHECK(std::fabs(e - p) <= 1e-10);
        CHECK(std::fabs(e - r) <= 1e-10);
    }
    CHECK_THROWS_AS(expected_range_exact(sq, {0, 0, 0}, 40, RangeMethod::enumeration),
                    resource_limit_error);
    CHECK_THROWS_AS(
        expected_range_exact(GraphSpec::hybrid(), {0, 0, 0}, 4, RangeMethod::transitive_renewal),
        resource_limit_error);
}

TEST_CASE("hitting scan basics") {
    auto g = GraphSpec::square();
    auto res = hit_bound_check(g, {0, 0, 0}, 64);
    CHECK(res.realized_constant > 0.0);
    CHECK(res.realized_constant < 10.0);
    for (const auto& s : res.samples) {
        CHECK(s.probability >= 0.0);
        CHECK(s.probability <= 1.0);
    }
}

TEST_CASE("expected range from survival matches renewal method") {
    auto g = GraphSpec::square();
    auto rs = return_series(g, {0, 0, 0}, 64);
    auto er = expected_range_from_survival(survival(first_return(rs)));
    CHECK(er[2] == doctest::Approx(2.75).epsilon(1e-14));
    CHECK(er[10] == doctest::Approx(expected_range_exact(g, {0, 0, 0}, 10,
                                                         RangeMethod::transitive_renewal))
                        .epsilon(1e-12));
}
