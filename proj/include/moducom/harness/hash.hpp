#pragma once

/**
 * @file hash.hpp
 * @brief Stable content hashing for experiment identification.
 *
 * Every output file embeds a hash of the canonical text of the experiment
 * that produced it, so a table can always be traced back to its exact
 * parameters. FNV-1a over the canonical string is stable across platforms
 * and builds.
 */

#include <cstdint>
#include <string>
#include <string_view>

namespace moducom::harness {

/// 64-bit FNV-1a of a byte string.
inline std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t h = 14695981039346656037ULL;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

/// Fixed-width lowercase hex rendering of a hash.
inline std::string hash_hex(std::uint64_t h) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace moducom::harness
