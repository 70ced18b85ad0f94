#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rangelab/lamplighter.hpp"

using namespace rangelab;

TEST_CASE("sws step: one step lights one lamp on average, deterministic under a seed") {
    auto g = GraphSpec::square();
    const std::uint64_t reps = 100000;
    double lit = 0.0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        SwsWalk w(g, {0, 0, 0}, RngStream(31, r));
        w.step();
        lit += double(w.lit_count());
        CHECK(w.lamps_subset_of_visited());
    }
    double se = std::sqrt(0.5 / reps);  // two independent fair lamps
    CHECK(std::fabs(lit / reps - 1.0) <= 4 * se);

    SwsWalk a(g, {0, 0, 0}, RngStream(5, 9));
    SwsWalk b(g, {0, 0, 0}, RngStream(5, 9));
    for (int t = 0; t < 500; ++t) {
        a.step();
        b.step();
    }
    CHECK(a.walker() == b.walker());
    CHECK(a.state().lit_lamps() == b.state().lit_lamps());
}

TEST_CASE("lamp support stays inside the visited set along a long run") {
    auto g = GraphSpec::square();
    SwsWalk w(g, {0, 0, 0}, RngStream(77, 0));
    for (int t = 0; t < 5000; ++t) {
        w.step();
        if (t % 500 == 0) CHECK(w.lamps_subset_of_visited());
    }
    CHECK(w.lamps_subset_of_visited());
    CHECK(w.lit_count() <= w.range());
}

TEST_CASE("bracket hand cases") {
    auto g = GraphSpec::square();
    // no differing lamps, walker moved distance 3: pure travel
    auto b1 = distance_bracket(g, {}, {0, 0, 0}, {3, 0, 0});
    CHECK(b1.lower == 3);
    CHECK(b1.upper == 3);
    // one differing lamp at the start vertex, walker back at start
    auto b2 = distance_bracket(g, {Vertex{0, 0, 0}}, {0, 0, 0}, {0, 0, 0});
    CHECK(b2.lower == 1);
    CHECK(b2.upper == 1);
    // monotone lower bound
    auto b3 = distance_bracket(g, {Vertex{2, 1, 0}, Vertex{-1, 0, 0}}, {0, 0, 0}, {4, 4, 0});
    CHECK(b3.lower >= 2);
    CHECK(b3.lower >= 8);  // d(x0, xn) = 8
    CHECK(b3.lower <= b3.upper);
}

TEST_CASE("wreath BFS oracle basics") {
    auto p4 = SmallGraph::path(4);
    SmallWreathState s0;  // walker 0, lamps off
    CHECK(wreath_distance_exact(p4, s0, s0) == 0);
    SmallWreathState toggled = s0;
    toggled.lamps = 1u;  // lamp at the walker's vertex
    CHECK(wreath_distance_exact(p4, s0, toggled) == 1);

    // lamps at v1 and v3, walker returns to v0:
    // forced tour 0->1->3->0 of length 6 plus two toggles
    SmallWreathState target;
    target.walker = 0;
    target.lamps = (1u << 1) | (1u << 3);
    int d = wreath_distance_exact(p4, s0, target);
    auto br = small_distance_bracket(p4, s0, target);
    CHECK(d == 8);
    CHECK(br.lower == 8);
    CHECK(static_cast<std::uint64_t>(d) >= br.lower);
    CHECK(static_cast<std::uint64_t>(d) <= br.upper);
}

TEST_CASE("bracket soundness on 1000 randomized pairs over small base graphs") {
    std::vector<SmallGraph> bases = {SmallGraph::path(4), SmallGraph::path(7),
                                     SmallGraph::cycle(6), SmallGraph::cycle(9),
                                     SmallGraph::grid(3, 3), SmallGraph::grid(2, 5)};
    RngStream rng(2025, 0);
    int trials = 0;
    while (trials < 1000) {
        const auto& g = bases[rng.next_index(static_cast<std::uint32_t>(bases.size()))];
        SmallWreathState a, b;
        a.walker = static_cast<int>(rng.next_index(g.size()));
        b.walker = static_cast<int>(rng.next_index(g.size()));
        a.lamps = static_cast<std::uint32_t>(rng.next_u64() & ((1u << g.size()) - 1));
        b.lamps = static_cast<std::uint32_t>(rng.next_u64() & ((1u << g.size()) - 1));
        int d = wreath_distance_exact(g, a, b);
        auto br = small_distance_bracket(g, a, b);
        CHECK(static_cast<std::uint64_t>(d) >= br.lower);
        CHECK(static_cast<std::uint64_t>(d) <= br.upper);
        ++trials;
    }
}

TEST_CASE("oracle rejects oversized base graphs") {
    auto big = SmallGraph::path(11);
    SmallWreathState s;
    CHECK_THROWS_AS(wreath_distance_exact(big, s, s), resource_limit_error);
}

TEST_CASE("base-graph files share the patch vertex syntax") {
    std::istringstream in(
        "VERTICES\n"
        "0,0\n"
        "1,0\n"
        "2,0\n"
        "EDGES\n"
        "0,0 1,0\n"
        "1,0 2,0\n");
    auto g = parse_small_graph(in);
    CHECK(g.size() == 3);
    auto d = g.all_pairs_distances();
    CHECK(d[0][2] == 2);
}

TEST_CASE("scaled displacement bracket on a Z^2 SWS run") {
    auto g = GraphSpec::square();
    SwsWalk w(g, {0, 0, 0}, RngStream(404, 2));
    for (int t = 0; t < 4096; ++t) w.step();
    auto lamps = w.state().lit_lamps();
    auto br = distance_bracket(g, lamps, {0, 0, 0}, w.walker());
    CHECK(br.lower <= br.upper);
    CHECK(br.lower >= lamps.size());
    CHECK(w.lit_count() <= w.range());
}
