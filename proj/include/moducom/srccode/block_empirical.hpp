#pragma once

/**
 * @file block_empirical.hpp
 * @brief Two-pass block coder charging each k-block by its empirical
 *        frequency among the observed blocks.
 *
 * The sequence is cut into b = floor(n/k) blocks; a block value appearing c
 * times out of b is charged ceil(log2(b/c)) + 1 bits each time it occurs.
 * Those lengths satisfy Kraft (sum of 2^-length <= 1/2), and the total is at
 * most b*(H + 2) where H is the entropy of the empirical block distribution.
 */

#include <cstdint>

#include "moducom/srccode/coder.hpp"

namespace moducom::srccode {

struct BlockEmpiricalSummary {
    std::uint64_t bits;         ///< total charged bits over the b blocks
    std::size_t blocks;         ///< b = floor(n/k)
    std::size_t distinct;       ///< distinct block values observed
    double empirical_entropy;   ///< H of the empirical block distribution, bits/block
    double kraft_sum;           ///< sum over distinct values of 2^-length
};

/// Charge every k-block of z by its empirical frequency (see file comment).
BlockEmpiricalSummary block_empirical_compress(const SymbolSeq& z, unsigned k);

} // namespace moducom::srccode
