#pragma once

/**
 * @file session.hpp
 * @brief One full encoder/channel/decoder run of the rateless feedback scheme.
 *
 * A session carries K message bits per block over the modulo-additive channel
 * with one feedback bit per symbol. The decoder tracks, for each of the 2^K
 * message hypotheses, the compressed length of the noise sequence that
 * hypothesis implies; a block ends at the first symbol where some hypothesis
 * makes the noise look compressible enough to rule out coincidence, and the
 * feedback bit tells the encoder to move to the next block.
 */

#include <cstddef>
#include <cstdint>
#include <vector>

#include "moducom/scheme/config.hpp"

namespace moducom::scheme {

/// Supplies the K message bits of each block.
class MessageSource {
public:
    /// Pseudorandom bits derived from a seed (independent of all other streams).
    static MessageSource random(std::uint64_t seed);

    /// A fixed bit pattern, cycled as needed; for handcrafted tests.
    /// @throws ValidationError on an empty pattern or a value not in {0, 1}.
    static MessageSource fixed_bits(std::vector<std::uint8_t> bits);

    /// Next `bits` bits as an integer, most significant bit first.
    /// @throws ValidationError unless 1 <= bits <= 32.
    std::uint32_t next(unsigned bits);

private:
    MessageSource() = default;

    bool random_ = true;
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    std::vector<std::uint8_t> pattern_;
    std::size_t pos_ = 0;
};

/// One decoded block.
struct BlockRecord {
    std::size_t first = 0;       ///< 1-based first channel use of the block
    std::size_t last = 0;        ///< 1-based last channel use (inclusive)
    std::uint32_t decoded = 0;   ///< message the decoder announced
    std::uint32_t sent = 0;      ///< message the encoder carried
    bool correct = false;        ///< decoded == sent
    double ls_at_start = 0.0;    ///< shared coder unterminated length entering the block
    double lt_at_end = 0.0;      ///< shared coder terminated length after resync
};

/// Complete outcome of a session; a pure function of (config, noise, messages).
struct SessionLog {
    std::vector<BlockRecord> blocks;  ///< decoded blocks, in channel order
    std::size_t decoded_blocks = 0;   ///< B = blocks.size()
    std::uint64_t decoded_bits = 0;   ///< B * K
    double actual_rate = 0.0;         ///< B * K / n
    bool error = false;               ///< any decoded block wrong
    std::size_t final_block_start = 0;  ///< 1-based start of the unfinished
                                        ///< trailing block; 0 if none pending
    double lt_true_bits = 0.0;        ///< metric's terminated length of the true noise
    double empirical_rate_value = 0.0;  ///< log2 q - lt_true_bits / n
    double rate_floor_value = 0.0;    ///< proven floor for error-free sessions
};

/**
 * Run one session. The noise sequence must have length config.n over
 * config.alphabet. Decoding maintains 2^K hypothesis coder states per block,
 * each extended from a snapshot of the shared coder taken at the block
 * boundary; ties at the terminating symbol go to the smallest message, and
 * the trailing block, if any, is recorded undecoded.
 *
 * @throws ValidationError on config/noise mismatch.
 * @throws InvariantError if the winning hypothesis's captured length does not
 *         reproduce on the shared coder after resynchronization.
 */
SessionLog run_session(const SchemeConfig& config, const SymbolSeq& noise,
                       MessageSource& messages);

}  // namespace moducom::scheme
