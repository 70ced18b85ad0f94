// rangelab: experiment driver for random-walk range statistics on recurrent
// graphs. Subcommands: run, verify, graphs, report.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rangelab/report.hpp"
#include "rangelab/runner.hpp"
#include "rangelab/verify.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvalidGraph = 4;

unsigned resolve_workers(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("RANGELAB_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;  // defer to config / hardware
}

int cmd_run(const std::string& config_path, unsigned workers, std::uint64_t seed,
            bool seed_given) {
    std::ifstream in(config_path);
    if (!in) {
        std::fprintf(stderr, "error: cannot open config '%s'\n", config_path.c_str());
        return kExitConfig;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto cfg = rangelab::parse_config_text(buf.str());
    auto artifacts = rangelab::run_config(cfg, workers, seed, seed_given);

    std::filesystem::path dir = cfg.get("output.dir", "out");
    auto csv_path = dir / cfg.get("output.csv", "estimates.csv");
    auto json_path = dir / cfg.get("output.json", "report.json");
    rangelab::atomic_write(csv_path, artifacts.estimates_csv);
    if (!artifacts.samples_csv.empty())
        rangelab::atomic_write(dir / cfg.get("output.samples_csv", "samples.csv"),
                               artifacts.samples_csv);
    rangelab::atomic_write(json_path, artifacts.report.to_json().dump(2) + "\n");

    std::printf("op %s: %zu estimate record(s), %zu note(s)\n", cfg.require("run.op").c_str(),
                artifacts.report.estimates.size(), artifacts.report.notes.size());
    for (const auto& n : artifacts.report.notes) std::printf("note: %s\n", n.c_str());
    std::printf("wrote %s and %s\n", csv_path.string().c_str(), json_path.string().c_str());
    return 0;
}

int cmd_verify(const std::string& profile_name, unsigned workers, std::uint64_t seed,
               const std::string& json_out) {
    rangelab::VerifyProfile profile;
    if (profile_name == "quick")
        profile = rangelab::VerifyProfile::quick;
    else if (profile_name == "full")
        profile = rangelab::VerifyProfile::full;
    else {
        std::fprintf(stderr, "error: --profile must be quick or full\n");
        return kExitConfig;
    }
    if (workers == 0) workers = rangelab::default_worker_count();
    auto results = rangelab::run_verification(profile, workers, seed);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s %-4s %-45s (%.1fs) %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                    r.name.c_str(), r.seconds, r.detail.c_str());
        all = all && r.pass;
    }
    for (const auto& s : rangelab::declared_out_of_reach())
        std::printf("info: out of reach at this scale: %s\n", s.c_str());
    if (!json_out.empty()) {
        nlohmann::json j;
        j["profile"] = profile_name;
        j["seed"] = seed;
        j["criteria"] = nlohmann::json::array();
        for (const auto& r : results)
            j["criteria"].push_back({{"id", r.id},
                                     {"name", r.name},
                                     {"pass", r.pass},
                                     {"seconds", r.seconds},
                                     {"detail", r.detail}});
        j["declared_out_of_reach"] = rangelab::declared_out_of_reach();
        rangelab::atomic_write(json_out, j.dump(2) + "\n");
    }
    if (!all) {
        std::printf("verification FAILED:");
        for (const auto& r : results)
            if (!r.pass) std::printf(" %s", r.id.c_str());
        std::printf("\n");
        return 1;
    }
    std::printf("verification passed (%zu criteria)\n", results.size());
    return 0;
}

int cmd_graphs_list() {
    std::printf("square                 Z^2 nearest-neighbor lattice (degree 4)\n");
    std::printf("king                   Z^2 with diagonals, |dx|_inf = 1 (degree 8)\n");
    std::printf("triangular             triangular lattice in axial coordinates (degree 6)\n");
    std::printf("hexagonal              honeycomb lattice (degree 3)\n");
    std::printf("hybrid                 Z^2 with king diagonals inside alternating annuli;\n");
    std::printf("                       graph.params.schedule_base (default 2) -> radii 4,16,256,...\n");
    std::printf("finite-modification    base lattice altered inside a finite hull;\n");
    std::printf("                       graph.params.base = square|king,\n");
    std::printf("                       graph.params.patch = demo|diag-ball5 or params.patch_file\n");
    return 0;
}

int cmd_report(const std::string& in_dir, const std::string& out_file) {
    auto merged = rangelab::merge_reports(in_dir);
    rangelab::atomic_write(out_file, merged.dump(2) + "\n");
    std::printf("merged %zu report(s), %zu estimate record(s) -> %s\n",
                merged["reports"].size(), merged["estimates"].size(), out_file.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-walk range laboratory"};
    app.require_subcommand(1);

    std::string config_path, profile = "quick", json_out, in_dir, out_file;
    unsigned workers = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto* run = app.add_subcommand("run", "execute an experiment config");
    run->add_option("config", config_path, "config file path")->required();
    run->add_option("--workers", workers, "worker threads (0 = config/auto)");
    run->add_option("--seed", seed, "override the master seed")->each([&](const std::string&) {
        seed_given = true;
    });

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--profile", profile, "quick or full");
    verify->add_option("--workers", workers, "worker threads (0 = auto)");
    std::uint64_t vseed = rangelab::kVerifySeed;
    verify->add_option("--seed", vseed, "master seed for the Monte Carlo criteria");
    verify->add_option("--json", json_out, "also write the results as JSON");

    auto* graphs = app.add_subcommand("graphs", "graph catalog");
    graphs->add_subcommand("list", "list built-in graph kinds");

    auto* report = app.add_subcommand("report", "merge run reports");
    report->add_option("--in", in_dir, "directory of *.json run reports")->required();
    report->add_option("--out", out_file, "merged output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, resolve_workers(workers), seed, seed_given);
        if (verify->parsed()) return cmd_verify(profile, resolve_workers(workers), vseed, json_out);
        if (graphs->parsed()) return cmd_graphs_list();
        if (report->parsed()) return cmd_report(in_dir, out_file);
    } catch (const rangelab::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const rangelab::resource_limit_error& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return kExitResource;
    } catch (const rangelab::invalid_vertex_error& e) {
        std::fprintf(stderr, "invalid vertex: %s\n", e.what());
        return kExitInvalidGraph;
    } catch (const rangelab::malformed_input_error& e) {
        std::fprintf(stderr, "malformed input: %s\n", e.what());
        return kExitInvalidGraph;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
