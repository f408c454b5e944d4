#pragma once

/**
 * @file prefix_suffix.hpp
 * @brief The prefix/suffix reference code built from a known noise sequence.
 *
 * For noise sequences in which the first k-d symbols of a block determine
 * the last d (the unique-prefix property; the shared-suffix test channel
 * produces exactly such sequences), a zero-error rate-(d/k)log2(q) code
 * exists once the decoder is allowed to know the noise sequence: the encoder
 * sends a constant 0 for k-d symbols, so the receiver reads the noise prefix
 * straight off the channel output, looks up the suffix noise it implies in a
 * registry built from the realized sequence, and subtracts it from the
 * remaining d symbols, which carry the message digits.
 */

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "moducom/core/alphabet.hpp"
#include "moducom/refsys/block_code.hpp"

namespace moducom::refsys {

using core::SymbolSeq;

/// The registry-backed code structure: block length k, message digits d,
/// and the (k-d)-prefix -> d-suffix map realized by the source sequence.
struct PrefixSuffixCode {
    Alphabet alphabet{2};
    unsigned k = 2;
    unsigned d = 1;
    std::map<std::vector<Symbol>, std::vector<Symbol>> registry;

    /**
     * The code as an encoder/decoder pair: M = q^d messages, codeword of m
     * is k-d zeros followed by the base-q digits of m; the decoder recovers
     * the suffix noise through the registry. A received prefix absent from
     * the registry decodes to message 0 (it cannot occur when the evaluated
     * blocks are the ones the registry was built from).
     */
    BlockCode as_block_code() const;
};

/**
 * Scan all complete k-blocks of z in order, recording each first-seen prefix
 * with its suffix. On sequences with the unique-prefix property the result
 * decodes every registered block exactly, so the iterated-mapping error on
 * those blocks is 0.
 *
 * @throws ValidationError unless 1 <= d < k and z contains at least one
 *         complete block, or if a prefix recurs with a different suffix.
 */
PrefixSuffixCode prefix_suffix_build(unsigned k, unsigned d, const SymbolSeq& z);

} // namespace moducom::refsys
