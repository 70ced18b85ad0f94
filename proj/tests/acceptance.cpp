// Acceptance suite: runs every verification criterion at full scale and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fails.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "rangelab/verify.hpp"

int main(int argc, char** argv) {
    auto profile = rangelab::VerifyProfile::full;
    for (int a = 1; a < argc; ++a)
        if (std::strcmp(argv[a], "--quick") == 0) profile = rangelab::VerifyProfile::quick;

    unsigned workers = rangelab::default_worker_count();
    if (const char* env = std::getenv("RANGELAB_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) workers = static_cast<unsigned>(v);
    }

    auto results = rangelab::run_verification(profile, workers);
    bool all = true;
    double total = 0.0;
    for (const auto& r : results) {
        std::printf("%s %-4s %-45s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                    r.name.c_str(), r.seconds);
        std::printf("         %s\n", r.detail.c_str());
        all = all && r.pass;
        total += r.seconds;
    }
    for (const auto& s : rangelab::declared_out_of_reach())
        std::printf("info: out of reach at this scale: %s\n", s.c_str());
    std::printf("%s in %.1fs\n", all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED", total);
    return all ? 0 : 1;
}
