#pragma once

/**
 * @file collapsed.hpp
 * @brief Empirical k-block statistics of a noise sequence.
 *
 * Drawing one of the first b noise blocks uniformly at random turns a fixed
 * individual noise sequence into a stochastic block channel whose noise
 * distribution is the empirical distribution of the observed blocks. That
 * "collapsed" distribution is what converse bounds (mutual information,
 * Fano) are evaluated against, and its Shannon entropy is the capacity
 * penalty of the realized noise.
 */

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "moducom/core/alphabet.hpp"

namespace moducom::refsys {

using core::Symbol;
using core::SymbolSeq;

/// Empirical distribution of the first b consecutive k-blocks of a noise
/// sequence: occurrence counts per distinct block, summing to b.
struct CollapsedDist {
    unsigned k = 1;
    std::size_t b = 0;
    std::map<std::vector<Symbol>, std::uint64_t> counts;

    /// Shannon entropy -sum (c/b) log2 (c/b) of the distribution, in bits
    /// per k-block; ranges over [0, k log2 q].
    double entropy_bits() const;
};

/**
 * Tally the first b k-blocks of z.
 * @throws ValidationError unless k >= 1, b >= 1, and b*k <= z.size().
 */
CollapsedDist collapsed_distribution(const SymbolSeq& z, unsigned k, std::size_t b);

/// Entropy of collapsed_distribution(z, k, b); same preconditions.
double collapsed_entropy(const SymbolSeq& z, unsigned k, std::size_t b);

} // namespace moducom::refsys
