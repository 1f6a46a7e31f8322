#pragma once

#include <cstdint>

namespace nptx {

// Counter-based splittable generator. Each stream is identified by
// (seed, stream) and produces the same sequence regardless of what other
// streams were drawn from, so parallel sweeps are reproducible under any
// scheduling. Mixing is the splitmix64 finalizer, which passes BigCrush
// when driven by a Weyl sequence.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ull))), ctr_(0) {}

    // Derive an independent child stream. Children of distinct ids, and the
    // parent itself, have unrelated keys.
    SplitRng split(std::uint64_t stream) const {
        SplitRng child(0);
        child.key_ = mix(key_ + mix(stream + 0x632be59bd9b4e019ull));
        child.ctr_ = 0;
        return child;
    }

    std::uint64_t next_u64() { return mix(key_ + (++ctr_) * 0x9e3779b97f4a7c15ull); }

    // Uniform on [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1): never returns an exact endpoint, safe to feed
    // through inverse CDFs.
    double next_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t ctr_;
};

// Stable 64-bit hash for deriving stream ids from strings (FNV-1a).
inline std::uint64_t hash_stream_id(const char* s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (; *s; ++s) {
        h ^= static_cast<unsigned char>(*s);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace nptx
