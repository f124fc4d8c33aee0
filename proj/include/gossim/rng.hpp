#pragma once

#include <cstdint>

namespace gossim {

// splitmix64 finalizer; also used as the substream-derivation hash.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Small counter-based generator (splitmix64). One instance per logical
// substream; cheap enough to create per (node, slot).
class Rng {
public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in {0, ..., bound-1}; bound must be >= 1.
    std::uint32_t next_below(std::uint32_t bound) {
        const std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= threshold) return static_cast<std::uint32_t>(x % bound);
        }
    }

private:
    std::uint64_t state_;
};

// Independent stream for (seed, a, b, c). Used so per-node, per-slot draws
// are reproducible and independent of evaluation order.
inline Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                     std::uint64_t c = 0) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (a + 0xbf58476d1ce4e5b9ULL));
    h = mix64(h ^ (b + 0x94d049bb133111ebULL));
    h = mix64(h ^ (c + 0x2545f4914f6cdd1dULL));
    return Rng(h);
}

// Stream tags namespacing the derivation domains.
namespace stream {
inline constexpr std::uint64_t kInit = 0x11;     // stationary positions
inline constexpr std::uint64_t kAux = 0x22;      // masks, axes, home points
inline constexpr std::uint64_t kMove = 0x33;     // per-slot moves
inline constexpr std::uint64_t kGossip = 0x44;   // per-slot contact choices
inline constexpr std::uint64_t kSample = 0x55;   // Monte-Carlo sample seeds
inline constexpr std::uint64_t kCut = 0x66;      // random cut generation
inline constexpr std::uint64_t kSource = 0x77;   // source sampling
inline constexpr std::uint64_t kRun = 0x88;      // per-replicate run seeds
}  // namespace stream

}  // namespace gossim
