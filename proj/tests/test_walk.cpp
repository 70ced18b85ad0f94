#include <doctest.h>

#include <cmath>

#include "rangelab/walk.hpp"

using namespace rangelab;

TEST_CASE("walk basics: R_0 = 1, R_1 = 2, adjacency of steps") {
    auto g = GraphSpec::square();
    WalkOptions opt;
    opt.keep_positions = true;
    auto t0 = simulate(g, {0, 0, 0}, 0, RngStream(1, 0), opt);
    CHECK(t0.range == 1);
    auto t1 = simulate(g, {0, 0, 0}, 1, RngStream(1, 0), opt);
    CHECK(t1.range == 2);

    auto tr = simulate(g, {0, 0, 0}, 2000, RngStream(42, 7), opt);
    for (std::size_t k = 1; k < tr.positions.size(); ++k) {
        int d = std::abs(tr.positions[k].i - tr.positions[k - 1].i) +
                std::abs(tr.positions[k].j - tr.positions[k - 1].j);
        CHECK(d == 1);
    }
    CHECK(!tr.first_return.has_value() == (tr.first_return == std::nullopt));
    if (tr.first_return) CHECK(*tr.first_return >= 2);
}

TEST_CASE("fixed seed gives bitwise-identical traces") {
    auto g = GraphSpec::square();
    WalkOptions opt;
    opt.keep_positions = true;
    auto a = simulate(g, {0, 0, 0}, 5000, RngStream(99, 3), opt);
    auto b = simulate(g, {0, 0, 0}, 5000, RngStream(99, 3), opt);
    REQUIRE(a.positions.size() == b.positions.size());
    for (std::size_t k = 0; k < a.positions.size(); ++k) CHECK(a.positions[k] == b.positions[k]);
    CHECK(a.range == b.range);
}

TEST_CASE("range increments lie in {0,1} and the pathwise last-exit identity holds") {
    auto g = GraphSpec::square();
    WalkOptions opt;
    opt.keep_positions = true;
    opt.keep_range_series = true;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        auto tr = simulate(g, {0, 0, 0}, 2000, RngStream(2024, rep), opt);
        for (std::size_t t = 1; t < tr.range_series.size(); ++t) {
            auto d = tr.range_series[t] - tr.range_series[t - 1];
            CHECK((d == 0 || d == 1));
        }
        CHECK(tr.range <= tr.steps + 1);
        CHECK(pathwise_last_exit_check(tr));
    }
}

TEST_CASE("empirical two-step statistics on Z^2 at 1e5 replicas") {
    auto g = GraphSpec::square();
    const std::uint64_t reps = 100000;
    std::uint64_t returns2 = 0;
    double range_sum = 0.0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        auto tr = simulate(g, {0, 0, 0}, 2, RngStream(7, r));
        if (tr.first_return && *tr.first_return == 2) ++returns2;
        range_sum += double(tr.range);
    }
    double p2 = double(returns2) / reps;  // P(S_2 = 0) = P(T_0 = 2) = 1/4
    double se_p = std::sqrt(0.25 * 0.75 / reps);
    CHECK(std::fabs(p2 - 0.25) <= 4 * se_p);
    double er2 = range_sum / reps;  // E[R_2] = 11/4
    double se_r = std::sqrt(3.0 / 16.0 / reps);
    CHECK(std::fabs(er2 - 2.75) <= 4 * se_r);
}

TEST_CASE("self-intersection: always >= 1, bounded by the half ranges; E[I_1] = 5/4") {
    auto g = GraphSpec::square();
    const std::uint64_t reps = 100000;
    double sum = 0.0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        auto si = self_intersection(g, {0, 0, 0}, 1, RngStream(11, r));
        CHECK(si.value >= 1);
        CHECK(si.value <= std::min(si.first_range, si.second_range));
        sum += double(si.value);
    }
    double mean = sum / reps;
    double se = std::sqrt(0.25 * 0.75 / reps);  // I_1 = 1 + Bernoulli(1/4)
    CHECK(std::fabs(mean - 1.25) <= 4 * se);
}

TEST_CASE("two-walk intersection: shares the start; E[J_1] = 5/4; symmetric") {
    auto g = GraphSpec::square();
    const std::uint64_t reps = 100000;
    double sum = 0.0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        auto j = two_walk_intersection(g, {0, 0, 0}, 1, RngStream(13, 2 * r),
                                       RngStream(13, 2 * r + 1));
        CHECK(j >= 1);
        sum += double(j);
    }
    double se = std::sqrt(0.25 * 0.75 / reps);
    CHECK(std::fabs(sum / reps - 1.25) <= 4 * se);
    // symmetry in the two streams
    for (std::uint64_t r = 0; r < 50; ++r) {
        auto a = two_walk_intersection(g, {0, 0, 0}, 64, RngStream(5, 2 * r),
                                       RngStream(5, 2 * r + 1));
        auto b = two_walk_intersection(g, {0, 0, 0}, 64, RngStream(5, 2 * r + 1),
                                       RngStream(5, 2 * r));
        CHECK(a == b);
    }
}

TEST_CASE("empirical first-return distribution is consistent with survival monotonicity") {
    auto g = GraphSpec::square();
    const std::uint64_t reps = 20000;
    const std::uint64_t horizon = 64;
    std::vector<std::uint64_t> return_at(horizon + 1, 0);
    for (std::uint64_t r = 0; r < reps; ++r) {
        auto tr = simulate(g, {0, 0, 0}, horizon, RngStream(17, r));
        if (tr.first_return) {
            ++return_at[*tr.first_return];
            CHECK(*tr.first_return != 1);  // no self-loops
        }
    }
    double cum = 0.0, prev_q = 1.0;
    for (std::uint64_t m = 1; m <= horizon; ++m) {
        cum += double(return_at[m]) / reps;
        double q = 1.0 - cum;
        CHECK(q <= prev_q + 1e-12);
        prev_q = q;
    }
}

TEST_CASE("walk over grid reports the same ranges as a retained trace") {
    auto g = GraphSpec::king();
    WalkOptions opt;
    opt.keep_range_series = true;
    auto tr = simulate(g, {0, 0, 0}, 1024, RngStream(23, 5), opt);
    std::vector<std::uint64_t> grid{0, 1, 64, 512, 1024};
    walk_over_grid(g, {0, 0, 0}, grid, RngStream(23, 5),
                   [&](std::uint64_t t, std::uint64_t range, Vertex) {
                       CHECK(range == tr.range_series[t]);
                   });
}

TEST_CASE("pathwise identity on a constructed backtracking path") {
    // a walk that bounces on one edge forever has range 2
    WalkTrace tr;
    tr.graph = "square";
    tr.start = Vertex{0, 0, 0};
    tr.steps = 11;
    tr.visited = IdSet(4);
    tr.visited.insert(encode(Vertex{0, 0, 0}));
    tr.visited.insert(encode(Vertex{1, 0, 0}));
    tr.range = 2;
    for (std::uint64_t t = 0; t <= tr.steps; ++t)
        tr.positions.push_back(t % 2 == 0 ? Vertex{0, 0, 0} : Vertex{1, 0, 0});
    tr.end = tr.positions.back();
    CHECK(pathwise_last_exit_check(tr));
}

TEST_CASE("retained traces beyond the guard are rejected") {
    auto g = GraphSpec::square();
    WalkOptions opt;
    opt.keep_positions = true;
    opt.max_kept_steps = 1000;
    CHECK_THROWS_AS(simulate(g, {0, 0, 0}, 2000, RngStream(1, 1), opt), resource_limit_error);
}
