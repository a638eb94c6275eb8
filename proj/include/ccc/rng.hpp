#pragma once

#include <cstdint>

namespace ccc {

// Counter-based splitmix64 stream. The state is seed + counter * gamma, so a
// stream is fully determined by (seed, counter) and identical seeds replay
// identical draw sequences.
class RngStream {
 public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), counter_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * kGamma;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n). Fixed-point multiply keeps the draw count at one
    // word per call regardless of n.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Independent child stream; (seed, id) -> child seed is injective in
    // practice and reproducible.
    RngStream substream(std::uint64_t id) const {
        std::uint64_t z = seed_ ^ ((id + 1) * kGamma);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return RngStream(z ^ (z >> 31));
    }

    std::uint64_t seed() const { return seed_; }

 private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace ccc
