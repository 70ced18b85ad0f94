// Run artifacts: the fixed-schema CSV and the JSON run report, both written
// atomically (temp file + rename). CSV bodies are deterministic; wall-clock
// times and the timestamp live only in the JSON report.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "rangelab/config.hpp"
#include "rangelab/errors.hpp"
#include "rangelab/estimators.hpp"

namespace rangelab {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr const char* kCsvHeader = "graph,statistic,method,n,value,dispersion,replicas,seed";

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_row(const EstimateRecord& r) {
    return r.graph + "," + r.statistic + "," + method_name(r.method) + "," + std::to_string(r.n) +
           "," + format_double(r.value) + "," + format_double(r.dispersion) + "," +
           std::to_string(r.replicas) + "," + std::to_string(r.seed);
}

inline std::string csv_body(const std::vector<EstimateRecord>& records) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : records) out += csv_row(r) + "\n";
    return out;
}

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    auto dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    static std::atomic<std::uint64_t> counter{0};
    auto tmp = path;
    tmp += ".tmp" + std::to_string(counter.fetch_add(1)) + "-" +
           std::to_string(std::chrono::steady_clock::now().time_since_epoch().count() & 0xFFFFFF);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw malformed_input_error("cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw malformed_input_error("short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

struct RunReport {
    ExperimentConfig config;
    std::vector<EstimateRecord> estimates;
    std::map<std::string, double> residuals;
    std::map<std::string, std::uint64_t> data_quality;
    std::map<std::string, double> wall_clock;
    std::vector<std::string> notes;
    nlohmann::json extra;  // op-specific blocks (regularity, certificates, ...)

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["artifact_version"] = kArtifactVersion;
        auto now = std::chrono::system_clock::now().time_since_epoch();
        j["timestamp_unix_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
        j["config_hash"] = fnv1a_hex(config.bytes);
        j["config"] = config.values;
        nlohmann::json est = nlohmann::json::array();
        for (const auto& r : estimates) {
            est.push_back({{"statistic", r.statistic},
                           {"graph", r.graph},
                           {"n", r.n},
                           {"value", r.value},
                           {"dispersion", r.dispersion},
                           {"replicas", r.replicas},
                           {"seed", r.seed},
                           {"method", method_name(r.method)}});
        }
        j["estimates"] = est;
        j["residuals"] = residuals;
        j["data_quality"] = data_quality;
        j["wall_clock_seconds"] = wall_clock;
        j["notes"] = notes;
        if (!extra.is_null()) j["detail"] = extra;
        return j;
    }
};

// merge every *.json report under dir into one combined document
inline nlohmann::json merge_reports(const std::filesystem::path& dir) {
    nlohmann::json merged;
    merged["artifact_version"] = kArtifactVersion;
    merged["estimates"] = nlohmann::json::array();
    merged["reports"] = nlohmann::json::array();
    if (!std::filesystem::is_directory(dir))
        throw malformed_input_error("'" + dir.string() + "' is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::ifstream in(f);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& ex) {
            throw malformed_input_error("bad JSON in '" + f.string() + "': " + ex.what());
        }
        nlohmann::json meta;
        meta["file"] = f.filename().string();
        if (j.contains("config_hash")) meta["config_hash"] = j["config_hash"];
        if (j.contains("notes")) meta["notes"] = j["notes"];
        if (j.contains("residuals")) meta["residuals"] = j["residuals"];
        merged["reports"].push_back(meta);
        if (j.contains("estimates"))
            for (const auto& e : j["estimates"]) merged["estimates"].push_back(e);
    }
    return merged;
}

}  // namespace rangelab
