// Error categories shared across the library. The CLI maps these to
// process exit codes (config 2, resource 3, invalid vertex/graph 4).
#pragma once

#include <stdexcept>
#include <string>

namespace rangelab {

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct resource_limit_error : std::runtime_error {
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

struct invalid_vertex_error : std::runtime_error {
    explicit invalid_vertex_error(const std::string& what) : std::runtime_error(what) {}
};

struct malformed_input_error : std::runtime_error {
    explicit malformed_input_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rangelab
