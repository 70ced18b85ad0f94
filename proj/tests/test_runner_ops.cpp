#include <doctest.h>
#include <filesystem>
#include <fstream>

#include "rangelab/runner.hpp"

using namespace rangelab;

namespace {

RunArtifacts run_text(const std::string& text, unsigned workers = 2) {
    return run_config(parse_config_text(text), workers);
}

bool has_stat(const RunArtifacts& art, const std::string& prefix) {
    for (const auto& r : art.report.estimates)
        if (r.statistic.rfind(prefix, 0) == 0) return true;
    return false;
}

}  // namespace

TEST_CASE("every registered op runs end-to-end at a small scale") {
    // exact series and identities
    auto rs = run_text("graph.kind = square\nrun.op = return-series\nrun.n = 8\n");
    CHECK(rs.report.estimates.size() == 9);
    CHECK(rs.report.estimates[2].value == 0.25);

    auto sv = run_text("graph.kind = square\nrun.op = survival-series\nrun.n = 8\n");
    CHECK(sv.report.estimates[2].value == 0.75);

    auto lx = run_text(
        "graph.kind = hybrid\ngraph.params.schedule_base = 2\n"
        "run.op = last-exit-check\nrun.n = 64\nrun.vertices = 0,0;30,0\n");
    CHECK(lx.report.residuals.at("last_exit_identity") <= 1e-12);

    auto er = run_text(
        "graph.kind = king\nrun.op = expected-range\nrun.n_grid = 2,4\n"
        "run.methods = enumeration,per-target,renewal\n");
    CHECK(er.report.estimates.size() == 6);

    auto sr = run_text("graph.kind = square\nrun.op = scaled-range\nrun.n_grid = 100,1000\n");
    CHECK(sr.report.estimates.back().value > 2.0);

    auto rb = run_text(
        "graph.kind = square\nrun.op = r-bounds\nrun.n_grid = 32,64\n"
        "run.vertices = 0,0;3,3\n");
    CHECK(has_stat(rb, "r_lower"));

    auto dw = run_text("graph.kind = king\nrun.op = on-diagonal-window\nrun.n_grid = 64,128\n");
    CHECK(has_stat(dw, "on_diagonal_window_min"));

    auto af = run_text("graph.kind = square\nrun.op = ahlfors-fit\nrun.radii = 8,16,32,64\n");
    CHECK(has_stat(af, "ahlfors_alpha"));

    auto sg = run_text(
        "graph.kind = square\nrun.op = subgaussian-fit\nrun.n_grid = 32,64\n"
        "run.distances = 2,4,6\n");
    CHECK(has_stat(sg, "subgaussian_c4"));

    auto et = run_text("graph.kind = square\nrun.op = exit-time-profile\nrun.radii = 2,4,8\n");
    CHECK(has_stat(et, "exit_time_min_ratio"));

    auto ip = run_text("graph.kind = square\nrun.op = isoperimetric\nrun.kmax = 8\n");
    CHECK(ip.report.estimates[0].value == 4.0);

    auto hb = run_text("graph.kind = square\nrun.op = hit-bound\nrun.n_grid = 64,128\n");
    CHECK(has_stat(hb, "hit_bound_constant"));

    auto kg = run_text(
        "graph.kind = square\nrun.op = killed-green\nrun.radii = 1,2,4\nrun.vertices = 0,0\n");
    CHECK(kg.report.estimates[0].value == doctest::Approx(4.0 / 3.0).epsilon(1e-10));

    auto iso = run_text("run.op = isoradial-verify\nrun.lattice = triangular\nrun.extent = 2\n");
    CHECK(has_stat(iso, "edge_c1"));

    // Monte Carlo ops
    auto mr = run_text(
        "graph.kind = square\nrun.op = mc-range\nrun.n_grid = 16,64\n"
        "run.replicas = 120\nrun.seed = 9\n");
    CHECK(has_stat(mr, "scaled_range"));
    CHECK(has_stat(mr, "c_inf_proxy"));
    CHECK(has_stat(mr, "tail_prob"));
    CHECK(!mr.samples_csv.empty());

    auto ms = run_text(
        "graph.kind = square\nrun.op = mc-small-n\nrun.replicas = 2000\nrun.seed = 10\n");
    CHECK(has_stat(ms, "p2_hat"));

    auto mi = run_text(
        "graph.kind = square\nrun.op = mc-intersections\nrun.n_grid = 64,128\n"
        "run.replicas = 200\nrun.j1_replicas = 2000\nrun.seed = 12\n");
    CHECK(has_stat(mi, "self_intersection_sq_normalized"));
    CHECK(mi.report.extra.contains("intersection_scan"));

    auto mf = run_text(
        "graph.kind = finite-modification\ngraph.params.base = square\n"
        "graph.params.patch = diag-ball5\nrun.op = mc-finite-mod-paired\n"
        "run.n = 2000\nrun.replicas = 40\nrun.seed = 13\n");
    CHECK(has_stat(mf, "paired_scaled_diff"));

    auto ml = run_text(
        "graph.kind = square\nrun.op = mc-lamplighter\nrun.n_grid = 64,256\n"
        "run.replicas = 20\nrun.seed = 14\n");
    CHECK(has_stat(ml, "wreath_ub_scaled"));
    CHECK(ml.report.data_quality.at("lamp_support_violations") == 0);

    auto mb = run_text("run.op = mc-bracket-check\nrun.trials = 100\nrun.seed = 15\n");
    CHECK(mb.report.data_quality.at("bracket_violations") == 0);
}

TEST_CASE("bracket check accepts a base-graph file with patch vertex syntax") {
    auto dir = std::filesystem::temp_directory_path() / "rangelab_cli_tests";
    std::filesystem::create_directories(dir);
    auto path = dir / "base_p5.txt";
    {
        std::ofstream out(path);
        out << "VERTICES\n0,0\n1,0\n2,0\n3,0\n4,0\n"
               "EDGES\n0,0 1,0\n1,0 2,0\n2,0 3,0\n3,0 4,0\n";
    }
    auto art = run_text("run.op = mc-bracket-check\nrun.trials = 50\nrun.seed = 16\n"
                        "run.base_file = " + path.string() + "\n");
    CHECK(art.report.data_quality.at("bracket_violations") == 0);
}

TEST_CASE("finite-mod paired op rejects a plain lattice") {
    CHECK_THROWS_AS(run_text("graph.kind = square\nrun.op = mc-finite-mod-paired\n"
                             "run.n = 100\nrun.replicas = 4\nrun.seed = 1\n"),
                    config_error);
}

TEST_CASE("renewal method through the runner rejects non-transitive graphs") {
    CHECK_THROWS_AS(run_text("graph.kind = hybrid\nrun.op = scaled-range\nrun.n_grid = 16\n"),
                    config_error);
}
