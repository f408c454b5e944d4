#pragma once

/**
 * @file codebook.hpp
 * @brief Implicit random codebook shared by encoder and decoder.
 *
 * The codeword symbol for (block b, message m, position t) is a pure function
 * of the common seed, so both sides materialize identical codebooks without
 * communication. Evaluation is split in two stages: a per-(b, t) PRF row and
 * a cheap per-message finalizer round, because the decoder visits all 2^K
 * messages of one row in its inner loop and the row half can be hoisted.
 */

#include <cstdint>

#include "moducom/core/alphabet.hpp"
#include "moducom/core/rng.hpp"

namespace moducom::scheme {

class Codebook {
public:
    Codebook(std::uint64_t seed, const core::Alphabet& alphabet)
        : key_(core::prf64(seed ^ core::domain::codebook, 0)), mod_(alphabet.q()) {}

    /// PRF material for one (block, position) slot, shared by all messages.
    std::uint64_t row(std::uint64_t block, std::uint64_t t) const noexcept {
        return core::prf64(key_, block, t);
    }

    /// Codeword symbol of one message within a precomputed row.
    core::Symbol symbol_in_row(std::uint64_t row_word, std::uint32_t message) const noexcept {
        const std::uint64_t mixed =
            core::mix64(row_word ^ (message * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL));
        return static_cast<core::Symbol>(mod_(static_cast<std::uint32_t>(mixed >> 32)));
    }

    /// Codeword symbol for (block, message, position); the encoder-side view.
    core::Symbol symbol(std::uint64_t block, std::uint32_t message, std::uint64_t t) const noexcept {
        return symbol_in_row(row(block, t), message);
    }

private:
    std::uint64_t key_;
    core::FastMod mod_;
};

}  // namespace moducom::scheme
