#pragma once

/**
 * @file modz_io.hpp
 * @brief MODZ noise file format.
 *
 * Layout (little-endian):
 *   bytes 0..3   magic "MODZ"
 *   bytes 4..5   version, u16, currently 1
 *   bytes 6..7   alphabet size q, u16
 *   bytes 8..15  sequence length n, u64
 *   bytes 16..   n symbol bytes, each < q
 */

#include <string>

#include "moducom/core/alphabet.hpp"

namespace moducom::core {

inline constexpr std::uint16_t kModzVersion = 1;

/// Read a MODZ file; validates magic, version, q, and symbol ranges.
SymbolSeq read_modz(const std::string& path);

/// Write a sequence as a MODZ file (atomically: temp file + rename).
void write_modz(const std::string& path, const SymbolSeq& seq);

} // namespace moducom::core
