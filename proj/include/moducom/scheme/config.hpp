#pragma once

/**
 * @file config.hpp
 * @brief Session parameters for the rateless feedback scheme.
 */

#include <cstddef>
#include <cstdint>

#include "moducom/core/alphabet.hpp"

namespace moducom::scheme {

using core::Alphabet;
using core::Symbol;
using core::SymbolSeq;

/// Decoder metric driving the termination test.
enum class MetricKind {
    lz78,  ///< incremental parsing, exact integer lengths
    kt,    ///< add-half block-mixture, real-valued lengths
};

/// Hard ceiling on bits per block: decoding work is Theta(2^K * n), so large
/// K trades guaranteed-floor tightness for infeasible search.
inline constexpr unsigned kBlockBitsCap = 16;

/**
 * Everything a session needs besides the noise itself. Encoder and decoder
 * are both derived from this one value: the seed is the common randomness
 * that makes their codebooks identical.
 */
struct SchemeConfig {
    std::size_t n = 0;             ///< horizon (channel uses)
    Alphabet alphabet{2};
    unsigned block_bits = 1;       ///< K: message bits per rateless block
    double epsilon = 0.05;         ///< target probability of any decoding error
    std::uint64_t seed = 0;        ///< common randomness
    MetricKind metric = MetricKind::lz78;
    unsigned kt_k_max = 0;         ///< mixture depth; 0 = automatic from (q, n)
    std::uint64_t work_budget = std::uint64_t{1} << 33;  ///< max 2^K * n

    /// @throws ValidationError on any violated field constraint, including a
    ///         hypothesis-work product 2^K * n above the budget.
    void validate() const;
};

}  // namespace moducom::scheme
