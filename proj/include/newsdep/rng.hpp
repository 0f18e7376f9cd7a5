#pragma once

#include <cstdint>

namespace newsdep {

// Philox4x32-10 counter-based generator. Value-semantic and splittable:
// substreams are independent by construction, so parallel replicates are
// reproducible regardless of scheduling. Output is identical across
// platforms for a given (seed, stream) pair.
class Philox {
public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    // Derived generator for an independent substream.
    Philox split(std::uint64_t substream) const {
        std::uint64_t stream = (static_cast<std::uint64_t>(stream_hi_) << 32) | stream_lo_;
        return Philox(key(), mix64(stream ^ mix64(substream + 0x9E3779B97F4A7C15ull)));
    }

    std::uint64_t next_u64() {
        if (have_ == 0) refill();
        --have_;
        std::uint64_t hi = buf_[2 * have_], lo = buf_[2 * have_ + 1];
        return (hi << 32) | lo;
    }

    // Uniform draw strictly inside (0,1).
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    std::uint64_t seed() const { return key(); }

private:
    std::uint32_t key0_, key1_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t block_ = 0;
    std::uint32_t buf_[4] = {0, 0, 0, 0};
    int have_ = 0;

    std::uint64_t key() const { return (static_cast<std::uint64_t>(key1_) << 32) | key0_; }

    static std::uint64_t mix64(std::uint64_t z) { // splitmix64 finalizer
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    static void round(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
        std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * c[0];
        std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * c[2];
        std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        std::uint32_t n0 = hi1 ^ c[1] ^ k0;
        std::uint32_t n1 = lo1;
        std::uint32_t n2 = hi0 ^ c[3] ^ k1;
        std::uint32_t n3 = lo0;
        c[0] = n0; c[1] = n1; c[2] = n2; c[3] = n3;
    }

    void refill() {
        std::uint32_t c[4] = {static_cast<std::uint32_t>(block_),
                              static_cast<std::uint32_t>(block_ >> 32),
                              stream_lo_, stream_hi_};
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int r = 0; r < 10; ++r) {
            round(c, k0, k1);
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buf_[0] = c[0]; buf_[1] = c[1]; buf_[2] = c[2]; buf_[3] = c[3];
        ++block_;
        have_ = 2;
    }
};

} // namespace newsdep
