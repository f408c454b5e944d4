#pragma once

/**
 * @file block_code.hpp
 * @brief Fixed-length block codes applied repeatedly over consecutive blocks.
 *
 * A reference system in this library is an ordinary block code: an encoder
 * table mapping each of M messages to k channel symbols, and an arbitrary
 * decoder function from k received symbols back to a message index. Applying
 * the pair once per consecutive k-block of a long transmission, with an
 * independent uniform message per block, is the "iterated mapping" setting
 * evaluated in iterated.hpp.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "moducom/core/alphabet.hpp"

namespace moducom::refsys {

using core::Alphabet;
using core::Symbol;

/// A block encoder/decoder pair. The encoder is an explicit table (row m is
/// the codeword of message m); the decoder is an arbitrary function, so
/// constructions whose decoder depends on side information (such as a known
/// noise sequence) fit without special casing.
struct BlockCode {
    Alphabet alphabet{2};
    unsigned k = 1;                  ///< block length in channel symbols
    std::uint64_t message_count = 1; ///< M
    std::vector<Symbol> table;       ///< M rows of k symbols, row-major

    /// Maps k received symbols (pointer to a block) to a message index.
    std::function<std::uint64_t(const Symbol*)> decode;

    /// Code rate log2(M) / k in bits per channel symbol.
    double rate() const { return std::log2(static_cast<double>(message_count)) / k; }

    /// Codeword of message m as a pointer to its k symbols.
    const Symbol* encode(std::uint64_t m) const { return table.data() + m * k; }

    /**
     * Check structural invariants: table dimensions, symbols within the
     * alphabet, a callable decoder, and an injective encoder (two messages
     * sharing a codeword could never both be decoded).
     * @throws ValidationError on any violation.
     */
    void validate() const;
};

/**
 * The trivial full-rate code: M = q^k, message m encoded as its base-q
 * digits (most significant digit first), decoder the exact inverse. On a
 * noiseless channel it is error-free at rate log2 q.
 * @throws ValidationError if q^k overflows the message-count range.
 */
BlockCode uniform_enumeration_code(const Alphabet& alphabet, unsigned k);

/// Base-q digits of m, most significant first, into out[0..k).
void to_digits(std::uint64_t m, unsigned k, unsigned q, Symbol* out);

/// Inverse of to_digits.
std::uint64_t from_digits(const Symbol* digits, unsigned k, unsigned q);

} // namespace moducom::refsys
