#pragma once

/**
 * @file noise.hpp
 * @brief Individual-noise-sequence generators.
 *
 * The setting is an individual-sequence one: the noise z is an arbitrary,
 * unknown, non-probabilistic sequence, and none of the guarantees in the
 * library assume anything about how it was produced. The generator menu here
 * is therefore a harness convenience for producing interesting test
 * sequences, not a modeling claim.
 *
 * The TestChannel variant implements the sequential random construction used
 * by the reference-system lower-bound experiments: each k-block gets a fresh
 * uniform (k-d)-symbol prefix; if that prefix appeared in an earlier block
 * the earlier block's suffix is reused, otherwise a fresh uniform d-symbol
 * suffix is drawn and remembered. Outputs therefore satisfy the unique-prefix
 * property: across all blocks, equal prefixes imply equal suffixes.
 */

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "moducom/core/alphabet.hpp"

namespace moducom::core {

/// Noise read from a MODZ file (its header fixes q and length).
struct FixedFile {
    std::string path;
};

/// Constant sequence of one symbol.
struct AllConstant {
    Symbol symbol = 0;
};

/// i.i.d. symbols with an explicit distribution over the alphabet.
struct BernoulliLike {
    std::vector<double> distribution; ///< size q, sums to 1 within 1e-12
    std::uint64_t seed = 0;           ///< stream label mixed with the call-site seed
};

/// Deterministic repetition of a fixed pattern.
struct Periodic {
    std::vector<Symbol> pattern;
};

/// First-order Markov chain over symbols; starts in state 0 and draws the
/// first symbol from row 0.
struct MarkovChain {
    std::vector<std::vector<double>> rows; ///< q rows, each summing to 1 within 1e-12
    std::uint64_t seed = 0;
};

/// Sequential random construction with shared suffixes (see file comment).
struct TestChannel {
    unsigned k = 2; ///< block length
    unsigned d = 1; ///< suffix length, 1 <= d < k
    std::uint64_t seed = 0;
};

/// Tagged union of all noise models plus validation and a canonical text form.
struct NoiseSpec {
    std::variant<FixedFile, AllConstant, BernoulliLike, Periodic, MarkovChain, TestChannel> variant;

    /// Validate parameters against an alphabet; throws ValidationError.
    void validate(const Alphabet& alphabet) const;

    /**
     * Parse a CLI spec string against a known alphabet. Accepted forms:
     *   "zero"                          constant 0
     *   "const:s=3"                     constant symbol
     *   "bern:p=0.11[,seed=42]"         probability p of a (uniformly chosen)
     *                                   nonzero symbol; q=2 gives flips
     *   "dist:0.7,0.2,0.1[,seed=42]"    explicit distribution
     *   "periodic:0,1,1"                repeated pattern
     *   "markov:0.9 0.1;0.2 0.8[,seed=42]"  transition rows
     *   "testchannel:k=3,d=1[,seed=7]"  shared-suffix construction
     * Anything else is treated as a file path (FixedFile). The result is
     * validated before being returned.
     */
    static NoiseSpec parse(const std::string& text, const Alphabet& alphabet);

    /// Canonical text form (stable across runs; used for plan hashing).
    std::string canonical() const;
};

/**
 * Generate n noise symbols. Pure function of (spec, alphabet, n, seed): the
 * call-site seed is mixed with the seed embedded in the spec (when the
 * variant has one), so a harness can hold the spec fixed and vary trials
 * through the argument.
 */
SymbolSeq noise_generate(const NoiseSpec& spec, const Alphabet& alphabet, std::size_t n,
                         std::uint64_t seed);

/**
 * Build the BernoulliLike distribution used by "bern:p=..": probability p of
 * drawing a nonzero symbol, spread uniformly over the q-1 nonzero symbols.
 * For q=2 this is the classic crossover distribution {1-p, p}.
 */
std::vector<double> spread_nonzero_distribution(const Alphabet& alphabet, double p);

} // namespace moducom::core
