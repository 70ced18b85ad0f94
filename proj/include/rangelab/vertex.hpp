// Vertex type shared by every graph in the catalog: a pair of signed
// lattice coordinates plus an optional patch-local tag for vertices
// introduced by a finite modification. Encodes injectively into 64 bits.
#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "rangelab/errors.hpp"

namespace rangelab {

// Coordinates are confined to |i|,|j| <= kCoordLimit so that (tag, i, j)
// packs into one 64-bit id ([tag:8][zig(i):28][zig(j):28]). Walks are far
// shorter than 2^27 steps, so the cap never binds in practice.
inline constexpr std::int32_t kCoordLimit = (1 << 27) - 1;
inline constexpr std::uint8_t kTagLimit = 200;  // 255 reserved for set sentinels

struct Vertex {
    std::int32_t i = 0;
    std::int32_t j = 0;
    std::uint8_t tag = 0;  // 0 = plain lattice vertex

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

namespace detail {
inline std::uint32_t zigzag(std::int32_t v) {
    return (static_cast<std::uint32_t>(v) << 1) ^ static_cast<std::uint32_t>(v >> 31);
}
inline std::int32_t unzigzag(std::uint32_t u) {
    return static_cast<std::int32_t>((u >> 1) ^ (~(u & 1) + 1));
}
}  // namespace detail

inline bool coords_in_range(const Vertex& v) {
    return v.i >= -kCoordLimit && v.i <= kCoordLimit && v.j >= -kCoordLimit && v.j <= kCoordLimit;
}

inline std::uint64_t encode(const Vertex& v) {
    if (!coords_in_range(v))
        throw resource_limit_error("vertex coordinates exceed the simulation horizon guard");
    if (v.tag > kTagLimit)
        throw invalid_vertex_error("vertex tag out of range");
    return (static_cast<std::uint64_t>(v.tag) << 56) |
           (static_cast<std::uint64_t>(detail::zigzag(v.i)) << 28) |
           static_cast<std::uint64_t>(detail::zigzag(v.j));
}

inline Vertex decode(std::uint64_t id) {
    Vertex v;
    v.tag = static_cast<std::uint8_t>(id >> 56);
    v.i = detail::unzigzag(static_cast<std::uint32_t>((id >> 28) & 0xFFFFFFFu));
    v.j = detail::unzigzag(static_cast<std::uint32_t>(id & 0xFFFFFFFu));
    return v;
}

inline bool operator<(const Vertex& a, const Vertex& b) {
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.tag < b.tag;
}

inline std::string to_string(const Vertex& v) {
    std::string s = std::to_string(v.i) + "," + std::to_string(v.j);
    if (v.tag != 0) s += "," + std::to_string(static_cast<int>(v.tag));
    return s;
}

struct VertexHash {
    std::size_t operator()(const Vertex& v) const {
        std::uint64_t x = encode(v);
        x ^= x >> 33;
        x *= 0xFF51AFD7ED558CCDull;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

}  // namespace rangelab
