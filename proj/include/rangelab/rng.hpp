// Counter-based random streams. A stream is a pure function of
// (master seed, replica index, draw counter), so replicas can run on any
// worker in any order and still produce identical draws.
#pragma once

#include <cstdint>

namespace rangelab {

namespace detail {
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// finalizer from splitmix64
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

class RngStream {
  public:
    RngStream() = default;
    RngStream(std::uint64_t master_seed, std::uint64_t replica)
        : key_(detail::mix64(detail::mix64(master_seed + detail::kGolden) ^
                             (replica * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull))) {}

    std::uint64_t next_u64() { return detail::mix64(key_ + (++counter_) * detail::kGolden); }

    // uniform index in [0, n) via 128-bit multiply (bias ~ n / 2^64)
    std::uint32_t next_index(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace rangelab
