#pragma once

/**
 * @file coder.hpp
 * @brief Contract for sequential source coders with terminated/unterminated
 *        lengths, plus shared integer code-length helpers.
 *
 * A sequential coder consumes one symbol at a time and exposes two running
 * code lengths in bits:
 *  - unterminated_bits() (L_S): the bits already committed for the symbols
 *    fed so far, excluding any end-of-input flush;
 *  - terminated_bits() (L_T): the total length if the input stopped now and
 *    the coder flushed its pending state.
 *
 * Every implementation must guarantee three properties the decoding scheme
 * builds on (all are exercised by the test suite):
 *  1. L_T is nondecreasing as symbols are fed.
 *  2. 0 <= L_T - L_S <= max_length_gap(n) for all prefixes of length <= n,
 *     with max_length_gap(n) = O(log n).
 *  3. Counting: for any fixed prefix state and fixed tail length, at most
 *     2^d tails satisfy L_T(prefix+tail) - L_S(prefix) <= d.
 */

#include <bit>
#include <cstdint>
#include <memory>

#include "moducom/core/alphabet.hpp"

namespace moducom::srccode {

using core::Alphabet;
using core::Symbol;
using core::SymbolSeq;

/// floor(log2 m) for m >= 1.
constexpr unsigned floor_log2_u64(std::uint64_t m) noexcept {
    return static_cast<unsigned>(std::bit_width(m) - 1);
}

/// ceil(log2 m) for m >= 1; the bit-width of an index into m choices.
constexpr unsigned ceil_log2_u64(std::uint64_t m) noexcept {
    return m <= 1 ? 0u : static_cast<unsigned>(std::bit_width(m - 1));
}

/// Length in bits of the Elias-gamma code for m >= 1: 2*floor(log2 m) + 1.
/// Gamma is self-delimiting and satisfies Kraft, which is what makes it safe
/// to embed a symbol count inside a terminated codeword.
constexpr unsigned elias_gamma_length(std::uint64_t m) noexcept {
    return 2 * floor_log2_u64(m) + 1;
}

/// Abstract sequential coder (see file comment for the length contract).
class SequentialCoder {
public:
    virtual ~SequentialCoder() = default;

    virtual const Alphabet& alphabet() const noexcept = 0;
    virtual std::size_t fed() const noexcept = 0;
    virtual void feed(Symbol s) = 0;

    virtual double unterminated_bits() const = 0;
    virtual double terminated_bits() const = 0;

    /// True when lengths are whole bits (thresholds may then be floored).
    virtual bool integer_lengths() const noexcept = 0;

    /// Upper bound on L_T - L_S over all prefixes of length <= n.
    virtual double max_length_gap(std::size_t n) const = 0;

    /// Independent snapshot; the copy may be extended on another thread.
    virtual std::unique_ptr<SequentialCoder> clone() const = 0;

    void feed_all(const SymbolSeq& z) {
        for (std::size_t i = 0; i < z.size(); ++i) feed(z[i]);
    }
};

} // namespace moducom::srccode
