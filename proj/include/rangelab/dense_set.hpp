// Open-addressing set of encoded vertex ids, tuned for walk visited-sets:
// insert-if-absent and membership probes only, no erase.
#pragma once

#include <cstdint>
#include <vector>

namespace rangelab {

class IdSet {
    static constexpr std::uint64_t kEmpty = ~0ull;  // never a valid id (tag 255 is reserved)

  public:
    explicit IdSet(std::size_t expected = 16) {
        std::size_t cap = 16;
        while (cap < expected * 2) cap <<= 1;
        slots_.assign(cap, kEmpty);
        mask_ = cap - 1;
    }

    // returns true when the id was newly inserted
    bool insert(std::uint64_t id) {
        if ((size_ + 1) * 2 > slots_.size()) grow();
        std::size_t pos = probe_start(id);
        while (slots_[pos] != kEmpty) {
            if (slots_[pos] == id) return false;
            pos = (pos + 1) & mask_;
        }
        slots_[pos] = id;
        ++size_;
        return true;
    }

    bool contains(std::uint64_t id) const {
        std::size_t pos = probe_start(id);
        while (slots_[pos] != kEmpty) {
            if (slots_[pos] == id) return true;
            pos = (pos + 1) & mask_;
        }
        return false;
    }

    std::size_t size() const { return size_; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::uint64_t s : slots_)
            if (s != kEmpty) fn(s);
    }

  private:
    std::size_t probe_start(std::uint64_t id) const {
        std::uint64_t h = id;
        h ^= h >> 33;
        h *= 0xFF51AFD7ED558CCDull;
        h ^= h >> 33;
        return static_cast<std::size_t>(h) & mask_;
    }

    void grow() {
        std::vector<std::uint64_t> old;
        old.swap(slots_);
        slots_.assign(old.size() * 2, kEmpty);
        mask_ = slots_.size() - 1;
        size_ = 0;
        for (std::uint64_t s : old)
            if (s != kEmpty) insert(s);
    }

    std::vector<std::uint64_t> slots_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

// number of ids present in both sets (probes the smaller against the larger)
inline std::size_t intersection_size(const IdSet& a, const IdSet& b) {
    const IdSet& small = a.size() <= b.size() ? a : b;
    const IdSet& large = a.size() <= b.size() ? b : a;
    std::size_t count = 0;
    small.for_each([&](std::uint64_t id) {
        if (large.contains(id)) ++count;
    });
    return count;
}

}  // namespace rangelab
