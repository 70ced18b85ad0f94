#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "rangelab/report.hpp"
#include "rangelab/runner.hpp"

using namespace rangelab;

namespace {

int run_binary(const std::string& args) {
    std::string cmd = std::string(RANGELAB_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    auto dir = std::filesystem::temp_directory_path() / "rangelab_cli_tests";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream out(path);
    out << content;
    return path;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing: sections, lists, grids, errors") {
    auto cfg = parse_config_text(
        "graph.kind = king\n"
        "# comment\n"
        "run.n_grid = 16,32,64\n"
        "run.vertices = 0,0;5,-3\n"
        "run.seed = 7\n");
    CHECK(cfg.require("graph.kind") == "king");
    CHECK(cfg.require_grid("run.n_grid") == std::vector<std::uint64_t>{16, 32, 64});
    auto verts = cfg.get_vertices("run.vertices", {});
    REQUIRE(verts.size() == 2);
    CHECK(verts[1] == Vertex{5, -3, 0});

    CHECK_THROWS_AS(parse_config_text("nonsense line\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("a.b = 1\na.b = 2\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("run.n_grid = 8,8\n").require_grid("run.n_grid"),
                    config_error);
    CHECK_THROWS_AS(parse_config_text("run.n = x\n").require_u64("run.n"), config_error);
}

TEST_CASE("mc ops require a seed, naming the field") {
    auto cfg = parse_config_text(
        "graph.kind = square\n"
        "run.op = mc-range\n"
        "run.n_grid = 16,64\n"
        "run.replicas = 8\n");
    try {
        run_config(cfg);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("run.seed") != std::string::npos);
    }
}

TEST_CASE("runner: identical config twice gives byte-identical CSV bodies") {
    auto cfg = parse_config_text(
        "graph.kind = square\n"
        "run.op = mc-range\n"
        "run.n_grid = 16,64,256\n"
        "run.replicas = 32\n"
        "run.seed = 11\n");
    auto a = run_config(cfg, 2);
    auto b = run_config(cfg, 2);
    CHECK(a.estimates_csv == b.estimates_csv);
    CHECK(a.samples_csv == b.samples_csv);
    // and across worker counts
    auto c = run_config(cfg, 8);
    CHECK(a.estimates_csv == c.estimates_csv);
    CHECK(a.samples_csv == c.samples_csv);
}

TEST_CASE("runner: replica sample rows carry the (replica, n, statistic, value) schema") {
    auto cfg = parse_config_text(
        "graph.kind = square\n"
        "run.op = mc-range\n"
        "run.n_grid = 16\n"
        "run.replicas = 4\n"
        "run.seed = 3\n");
    auto art = run_config(cfg, 1);
    CHECK(art.samples_csv.rfind("replica,n,statistic,value\n", 0) == 0);
    CHECK(art.samples_csv.find("0,16,range,") != std::string::npos);
}

TEST_CASE("runner: seed override is honored") {
    auto cfg = parse_config_text(
        "graph.kind = square\n"
        "run.op = mc-range\n"
        "run.n_grid = 16\n"
        "run.replicas = 8\n"
        "run.seed = 5\n");
    auto a = run_config(cfg, 1);
    auto b = run_config(cfg, 1, 6, true);
    CHECK(a.samples_csv != b.samples_csv);
}

TEST_CASE("config hash matches a recomputation from the config bytes") {
    auto cfg = parse_config_text("graph.kind = square\nrun.op = isoperimetric\nrun.kmax = 4\n");
    auto art = run_config(cfg);
    auto j = art.report.to_json();
    CHECK(j["config_hash"] == fnv1a_hex(cfg.bytes));
}

TEST_CASE("exact ops through the runner") {
    auto cfg = parse_config_text(
        "graph.kind = king\n"
        "run.op = scaled-range\n"
        "run.n_grid = 64,256\n");
    auto art = run_config(cfg);
    REQUIRE(art.report.estimates.size() == 2);
    CHECK(art.report.estimates[0].statistic == "scaled_expected_range");
    CHECK(art.report.estimates[0].method == Method::exact);

    auto iso = run_config(parse_config_text(
        "run.op = isoradial-verify\nrun.lattice = hexagonal\nrun.extent = 3\n"));
    bool pass_seen = false;
    for (const auto& r : iso.report.estimates)
        if (r.statistic == "isoradial_pass") pass_seen = r.value == 1.0;
    CHECK(pass_seen);
}

TEST_CASE("cli: exit codes for config, resource, and vertex errors") {
    CHECK(run_binary("graphs list") == 0);

    auto missing_seed = write_temp("missing_seed.cfg",
                                   "graph.kind = square\n"
                                   "run.op = mc-small-n\n"
                                   "run.replicas = 100\n");
    CHECK(run_binary("run " + missing_seed.string()) == 2);

    auto bad_syntax = write_temp("bad_syntax.cfg", "this is not a config\n");
    CHECK(run_binary("run " + bad_syntax.string()) == 2);

    auto bad_vertex = write_temp("bad_vertex.cfg",
                                 "graph.kind = finite-modification\n"
                                 "graph.params.base = square\n"
                                 "graph.params.patch = demo\n"
                                 "run.op = return-series\n"
                                 "run.n = 8\n"
                                 "run.vertices = 1,1\n");  // removed by the patch
    CHECK(run_binary("run " + bad_vertex.string()) == 4);

    auto too_big = write_temp("too_big.cfg",
                              "graph.kind = square\n"
                              "run.op = return-series\n"
                              "run.n = 64\n"
                              "guards.max_ball_vertices = 10\n");
    CHECK(run_binary("run " + too_big.string()) == 3);

    CHECK(run_binary("run /nonexistent/path.cfg") == 2);
}

TEST_CASE("cli: run writes artifacts and report merges them") {
    auto dir = std::filesystem::temp_directory_path() / "rangelab_cli_tests" / "outA";
    std::filesystem::remove_all(dir);
    auto cfg = write_temp("ok.cfg",
                          "graph.kind = square\n"
                          "run.op = expected-range\n"
                          "run.n_grid = 2,4\n"
                          "run.methods = enumeration,renewal\n"
                          "output.dir = " + dir.string() + "\n");
    CHECK(run_binary("run " + cfg.string()) == 0);
    CHECK(std::filesystem::exists(dir / "estimates.csv"));
    CHECK(std::filesystem::exists(dir / "report.json"));
    auto csv1 = slurp(dir / "estimates.csv");
    CHECK(csv1.find("expected_range[enumeration],enumeration,2,2.75") != std::string::npos);

    // byte-identical rerun
    CHECK(run_binary("run " + cfg.string()) == 0);
    CHECK(slurp(dir / "estimates.csv") == csv1);

    auto merged_path = dir / "merged.json";
    CHECK(run_binary("report --in " + dir.string() + " --out " + merged_path.string()) == 0);
    std::ifstream jin(merged_path);
    nlohmann::json merged;
    jin >> merged;
    CHECK(merged["estimates"].size() == 4);
}

TEST_CASE("cli: unknown op fails with config exit code") {
    auto cfg = write_temp("unknown_op.cfg", "run.op = no-such-op\n");
    CHECK(run_binary("run " + cfg.string()) == 2);
}

TEST_CASE("cli: verify quick passes and writes its JSON summary") {
    auto dir = std::filesystem::temp_directory_path() / "rangelab_cli_tests";
    auto json_path = dir / "verify.json";
    CHECK(run_binary("verify --profile quick --json " + json_path.string()) == 0);
    std::ifstream in(json_path);
    nlohmann::json j;
    in >> j;
    CHECK(j["criteria"].size() == 12);
    for (const auto& c : j["criteria"]) CHECK(c["pass"] == true);
    CHECK(run_binary("verify --profile bogus") == 2);
}

TEST_CASE("ops that fit regularity constants fill the report's regularity block") {
    auto art = run_config(parse_config_text(
        "graph.kind = square\nrun.op = ahlfors-fit\nrun.radii = 8,16,32,64\n"));
    auto j = art.report.to_json();
    CHECK(j["detail"]["regularity"].contains("alpha"));
}
