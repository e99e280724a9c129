#pragma once

#include <cstdint>

namespace afc {

// splitmix64 finalizer; used for seed expansion and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent stream seed from a root seed and two integer keys
// (e.g. sample size and replicate index).  Same inputs -> same stream,
// regardless of how many other streams exist.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t key1, std::uint64_t key2) {
    std::uint64_t s = root;
    std::uint64_t a = splitmix64(s) ^ (key1 + 0x9e3779b97f4a7c15ULL);
    std::uint64_t b = splitmix64(a) ^ (key2 + 0xbf58476d1ce4e5b9ULL);
    return splitmix64(b);
}

// xoshiro256** with splitmix64 seeding.  Deterministic and portable:
// identical output for a given seed on every platform, which the sampler
// and the replication harness rely on.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform draw strictly inside (0, 1): 53-bit mantissa offset by half an
    // ulp so inverse-CDF transforms never see 0 or 1.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

} // namespace afc
