#pragma once

/**
 * @file rates.hpp
 * @brief Rate formulas of the rateless scheme: block-size choice, empirical
 *        rate, the proven per-session rate floor, and the horizon overhead.
 *
 * All formulas take the worst-case terminated/unterminated length gap
 * max_gap_bits of the metric in use (the LZ78 flush size, or 0 for the
 * mixture metric) as an explicit argument, so they stay pure functions.
 */

#include <cstddef>

#include "moducom/core/alphabet.hpp"
#include "moducom/scheme/config.hpp"

namespace moducom::scheme {

/// Result of the block-size rule: the K to run, whether the feasibility cap
/// bit, and the uncapped optimum for reporting.
struct BlockBitsChoice {
    unsigned block_bits;  ///< K actually returned (capped at kBlockBitsCap)
    bool capped;          ///< true when the optimum exceeded the cap
    double uncapped;      ///< ceil(sqrt(n * log2 q * (log2(q n / eps) + gap)))
};

/// Balance the per-block overhead a/K against the per-bit cost K/n:
/// K = ceil(sqrt(a/b)) with a = log2 q * (log2(q n / eps) + max_gap_bits),
/// b = 1/n, which keeps a/K + bK within 3*sqrt(ab) of optimal.
/// @throws ValidationError unless n >= 1, 0 < epsilon < 1, max_gap_bits >= 0.
BlockBitsChoice choose_block_bits(std::size_t n, const Alphabet& alphabet, double epsilon,
                                  double max_gap_bits);

/// log2 q - lt_bits / n: the rate the noise sequence admits in principle.
/// Negative for incompressible sequences at small n; returned as-is.
/// @throws ValidationError unless n >= 1 and lt_bits >= 0.
double empirical_rate(double lt_bits, std::size_t n, const Alphabet& alphabet);

/// The exact proven floor on the achieved rate of an error-free session:
/// (K/n) * ((n log2 q - lt_true_bits) / (K + log2 q + log2(n/eps) + gap) - 1).
/// May be negative (vacuous) for incompressible noise; returned as-is.
/// block_bits is real-valued so the uncapped optimum can be analyzed too.
/// @throws ValidationError unless n >= 1, block_bits > 0, 0 < epsilon < 1,
///         lt_true_bits >= 0, max_gap_bits >= 0.
double rate_floor(double lt_true_bits, std::size_t n, const Alphabet& alphabet,
                  double block_bits, double epsilon, double max_gap_bits);

/// 3 * sqrt((log2 q / n) * (log2(n q / eps) + max_gap_bits)): with the
/// uncapped block-size choice, rate_floor >= empirical_rate minus this, and
/// it decays to zero as n grows.
/// @throws ValidationError unless n >= 1, 0 < epsilon < 1, max_gap_bits >= 0.
double horizon_overhead(std::size_t n, const Alphabet& alphabet, double epsilon,
                        double max_gap_bits);

/// The decoder's stopping rule, reference form: true iff
///     lt_hyp - ls_prefix <= (i - j) * log2 q - log2(n/eps) - block_bits,
/// with the right side floored when the metric reports integer lengths
/// (an integer gap crosses a real threshold exactly at its floor).
/// @throws ValidationError unless i > j and the scalar preconditions hold.
bool termination_check(double lt_hyp, double ls_prefix, std::size_t i, std::size_t j,
                       unsigned block_bits, std::size_t n, double epsilon,
                       const Alphabet& alphabet, bool integer_lengths);

}  // namespace moducom::scheme
