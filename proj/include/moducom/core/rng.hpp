#pragma once

/**
 * @file rng.hpp
 * @brief Counter-based pseudorandomness and exact modular reduction.
 *
 * All randomness in the library flows from explicit 64-bit seeds through a
 * stateless keyed mixing function. Counter-based generation (rather than a
 * sequential engine) is essential here: encoder and decoder must derive
 * bit-identical codebooks independently from a shared seed, and noise
 * generators must be pure functions of (spec, n, seed) so every experiment
 * replays exactly.
 *
 * The mixer is the splitmix64 finalizer, chained once per input word. It has
 * full avalanche on single-bit input changes, which is sufficient statistical
 * quality for simulation (verified by coarse chi-square tests in the suite).
 */

#include <cstdint>

namespace moducom::core {

/// splitmix64 finalizer: bijective 64-bit avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Keyed PRF over up to three counters. Each argument is absorbed through an
/// additional finalizer round with a distinct additive constant, so streams
/// indexed by (a), (a,b) and (a,b,c) never collide structurally.
constexpr std::uint64_t prf64(std::uint64_t key, std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0) noexcept {
    std::uint64_t h = mix64(key + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (a + 0x2545f4914f6cdd1dULL));
    h = mix64(h ^ (b + 0x6a09e667f3bcc909ULL));
    h = mix64(h ^ (c + 0xbb67ae8584caa73bULL));
    return h;
}

/// Stream-domain tags keeping independent random streams separated under one
/// user-facing seed.
namespace domain {
inline constexpr std::uint64_t noise = 0x6e6f697365ULL;       // noise generators
inline constexpr std::uint64_t codebook = 0x636f6465626bULL;  // scheme codebooks
inline constexpr std::uint64_t message = 0x6d657373ULL;       // message bit streams
inline constexpr std::uint64_t trial = 0x747269616cULL;       // per-trial seed derivation
inline constexpr std::uint64_t eval = 0x6576616cULL;          // Monte-Carlo evaluators
} // namespace domain

/// Map a 64-bit word to the unit interval [0, 1) with 53-bit resolution.
constexpr double to_unit_double(std::uint64_t u) noexcept {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

/**
 * Exact `x % d` for 32-bit numerators without a division instruction
 * (fixed-point reciprocal, one widening multiply per reduction). Divisors are
 * alphabet sizes, so d ∈ [2, 256]; power-of-two divisors take the mask path.
 * Used in the decoder hot loop where 2^K reductions happen per channel symbol.
 */
class FastMod {
public:
    explicit FastMod(std::uint32_t d) noexcept
        : d_(d), magic_(~0ULL / d + 1), mask_(d - 1), pow2_((d & (d - 1)) == 0) {}

    std::uint32_t divisor() const noexcept { return d_; }

    /// Reduce the low 32 bits of a PRF word: returns x % d exactly.
    std::uint32_t operator()(std::uint32_t x) const noexcept {
        if (pow2_) return x & mask_;
        const std::uint64_t low = magic_ * x;
        return static_cast<std::uint32_t>((static_cast<unsigned __int128>(low) * d_) >> 64);
    }

private:
    std::uint32_t d_;
    std::uint64_t magic_;
    std::uint32_t mask_;
    bool pow2_;
};

} // namespace moducom::core
