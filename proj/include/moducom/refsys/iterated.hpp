#pragma once

/**
 * @file iterated.hpp
 * @brief Error probability of a block code iterated over a noise sequence.
 *
 * The code is applied once per consecutive k-block: an independent uniform
 * message per block is encoded, the fixed noise block is added modulo q,
 * and the decoder maps the result back to a message. The figure of merit is
 * the error probability averaged over blocks (and over the random messages).
 * Both a Monte Carlo estimate and, for small codes, the exact average are
 * provided; because blocks do not interact, the exact per-block average over
 * all messages equals the average over all message tuples.
 */

#include <cstddef>
#include <cstdint>

#include "moducom/core/alphabet.hpp"
#include "moducom/refsys/block_code.hpp"

namespace moducom::refsys {

using core::SymbolSeq;

/**
 * Monte Carlo estimate of the iterated-mapping average error probability of
 * `code` on the first b blocks of z: `trials` independent passes, each
 * drawing one uniform message per block. Deterministic in `seed`.
 *
 * @throws ValidationError unless code.validate() passes, the alphabets
 *         match, b >= 1, trials >= 1, and b * code.k <= z.size().
 */
double iterated_mapping_eval(const BlockCode& code, const SymbolSeq& z, std::size_t b,
                             std::uint64_t trials, std::uint64_t seed);

/**
 * Exact iterated-mapping average error probability: for each of the first b
 * blocks, the fraction of the M messages the decoder gets wrong under that
 * block's noise, averaged over blocks. Equals the expectation estimated by
 * iterated_mapping_eval. Same preconditions (minus trials).
 */
double iterated_mapping_error_exact(const BlockCode& code, const SymbolSeq& z, std::size_t b);

} // namespace moducom::refsys
