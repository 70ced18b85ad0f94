// Experiment config: line-oriented "section.key = value" text. Values are
// scalars or comma-separated lists; vertex lists separate vertices with ';'
// ("0,0;1000,0"). '#' starts a comment.
#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rangelab/errors.hpp"
#include "rangelab/graph.hpp"

namespace rangelab {

struct ExperimentConfig {
    std::map<std::string, std::string> values;
    std::string bytes;  // the raw config text, for hashing and echo

    bool has(const std::string& key) const { return values.count(key) != 0; }

    std::string get(const std::string& key, const std::string& fallback = "") const {
        auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }

    std::string require(const std::string& key) const {
        auto it = values.find(key);
        if (it == values.end()) throw config_error("missing config field '" + key + "'");
        return it->second;
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        return parse_u64(key, values.at(key));
    }

    std::uint64_t require_u64(const std::string& key) const {
        return parse_u64(key, require(key));
    }

    double get_f64(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        try {
            std::size_t pos = 0;
            double v = std::stod(values.at(key), &pos);
            if (pos != values.at(key).size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw config_error("field '" + key + "' is not a number");
        }
    }

    std::vector<std::uint64_t> get_u64_list(const std::string& key) const {
        std::vector<std::uint64_t> out;
        if (!has(key)) return out;
        std::istringstream ss(values.at(key));
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(parse_u64(key, trim(tok)));
        return out;
    }

    // strictly increasing n grid
    std::vector<std::uint64_t> require_grid(const std::string& key) const {
        auto grid = get_u64_list(key);
        if (grid.empty()) throw config_error("missing config field '" + key + "'");
        for (std::size_t k = 1; k < grid.size(); ++k)
            if (grid[k] <= grid[k - 1])
                throw config_error("field '" + key + "' must be strictly increasing");
        return grid;
    }

    std::vector<Vertex> get_vertices(const std::string& key,
                                     const std::vector<Vertex>& fallback) const {
        if (!has(key)) return fallback;
        std::vector<Vertex> out;
        std::istringstream ss(values.at(key));
        std::string tok;
        while (std::getline(ss, tok, ';')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            out.push_back(parse_vertex_token(tok));
        }
        if (out.empty()) throw config_error("field '" + key + "' lists no vertices");
        return out;
    }

    static std::string trim(const std::string& s) {
        std::size_t a = s.find_first_not_of(" \t\r");
        std::size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? "" : s.substr(a, b - a + 1);
    }

  private:
    static std::uint64_t parse_u64(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            unsigned long long u = std::stoull(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing");
            return u;
        } catch (const std::exception&) {
            throw config_error("field '" + key + "' is not a non-negative integer");
        }
    }
};

inline ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    cfg.bytes = text;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = ExperimentConfig::trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = ExperimentConfig::trim(t.substr(0, eq));
        std::string value = ExperimentConfig::trim(t.substr(eq + 1));
        if (key.empty()) throw config_error("line " + std::to_string(lineno) + ": empty key");
        if (cfg.values.count(key))
            throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        cfg.values[key] = value;
    }
    return cfg;
}

// graph described by the graph.* section
inline GraphSpec graph_from_config(const ExperimentConfig& cfg,
                                   const std::string& prefix = "graph.") {
    std::string kind = cfg.get(prefix + "kind", "square");
    if (kind == "square") return GraphSpec::square();
    if (kind == "king") return GraphSpec::king();
    if (kind == "triangular") return GraphSpec::triangular();
    if (kind == "hexagonal") return GraphSpec::hexagonal();
    if (kind == "hybrid" || kind == "hybrid-annuli")
        return GraphSpec::hybrid(cfg.get_u64(prefix + "params.schedule_base", 2));
    if (kind == "finite-modification") {
        std::string base = cfg.get(prefix + "params.base", "square");
        GraphKind bk;
        if (base == "square")
            bk = GraphKind::square;
        else if (base == "king")
            bk = GraphKind::king;
        else
            throw config_error("field '" + prefix + "params.base' must be square or king");
        if (cfg.has(prefix + "params.patch_file")) {
            std::string path = cfg.require(prefix + "params.patch_file");
            std::ifstream in(path);
            if (!in) throw config_error("cannot open patch file '" + path + "'");
            return GraphSpec::finite_modification(bk, parse_patch(in, path));
        }
        std::string patch = cfg.get(prefix + "params.patch", "demo");
        if (patch == "demo") return GraphSpec::finite_modification(bk, demo_patch());
        if (patch == "diag-ball5")
            return GraphSpec::finite_modification(bk, diagonal_ball_patch(5));
        throw config_error("field '" + prefix +
                           "params.patch' must be demo, diag-ball5, or use params.patch_file");
    }
    throw config_error("unknown graph.kind '" + kind + "'");
}

}  // namespace rangelab
