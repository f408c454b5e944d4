#pragma once

/**
 * @file testchannel_entropy.hpp
 * @brief Exact entropy of the shared-suffix noise construction, by enumeration.
 *
 * The shared-suffix construction draws, per k-block, a uniform (k-d)-prefix;
 * a prefix seen for the first time gets a fresh uniform d-suffix, a repeated
 * prefix reuses the suffix registered at first sight. The process entropy of
 * i consecutive blocks has no simple closed form, but for a binary alphabet
 * and small (k, i) the full history space is enumerable, giving H exactly.
 */

namespace moducom::refsys {

/**
 * Exact Shannon entropy, in bits, of the first i_blocks k-blocks of the
 * binary shared-suffix process with suffix length d: enumerate all 2^(i*k)
 * sequences, score each by the process probability (prefixes uniform;
 * suffixes uniform when fresh, deterministic on reuse), and sum -p log2 p.
 *
 * @throws ValidationError unless 1 <= d < k <= 4 and 1 <= i_blocks <= 3
 *         (the enumerable regime).
 * @throws InvariantError if the enumerated probabilities fail to sum to 1.
 */
double testchannel_entropy_exact(unsigned k, unsigned d, unsigned i_blocks);

/**
 * Closed-form lower bound on the same entropy:
 *   i*k*H1 + min(i, 2^(k-d)) * k * (H0 - H1)
 * with per-symbol levels H1 = (k-d)/k and H0 = H1 + d/(2k) (binary
 * alphabet). H1 is the rate once every prefix repeats (only prefixes carry
 * fresh randomness); the second term credits the fresh suffixes of the at
 * most min(i, 2^(k-d)) first-sight blocks at half weight.
 */
double testchannel_entropy_lower_bound(unsigned k, unsigned d, unsigned i_blocks);

} // namespace moducom::refsys
