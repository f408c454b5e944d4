#pragma once

/**
 * @file bounds.hpp
 * @brief Closed-form rate identities and redundancy bounds for modulo-additive
 *        channels with individual noise sequences.
 *
 * Everything here is a pure function of its arguments: entropy helpers, the
 * error-penalized effective rate, Fano-style converse rates, compressibility
 * capacity proxies, and the lower/upper redundancy envelope that sandwiches
 * the price of universality at finite (n, k).  All rates and lengths are in
 * bits (log base 2).
 */

#include <cstddef>
#include <cstdint>

#include "moducom/core/alphabet.hpp"

namespace moducom::bounds {

using core::Alphabet;
using core::SymbolSeq;

/// Binary entropy h(p) = -p*log2(p) - (1-p)*log2(1-p), with h(0) = h(1) = 0.
/// @throws ValidationError unless 0 <= p <= 1.
double binary_entropy(double p);

/// Error-penalized effective rate max(0, (1-epsilon)*rate - h(epsilon)/block_len):
/// the net rate after a genie erases failed blocks and charges the receiver for
/// flagging them.  Clamped at zero because a negative net rate conveys nothing.
/// @throws ValidationError unless rate >= 0, 0 <= epsilon <= 1, block_len >= 1.
double effective_rate(double rate, double epsilon, unsigned block_len);

/// Capacity proxy (1 - ratio) * log2 q where ratio is the incremental-parsing
/// compression ratio of the noise sequence z.  At finite n the ratio can
/// exceed 1 (parsing overhead), making the proxy vacuously small or negative.
/// @throws ValidationError on empty z.
double compressibility_capacity(const SymbolSeq& z);

/// Fano-style converse: any block scheme over alphabet q with block length k,
/// message set of size 2^log2_messages and average error epsilon has rate at
/// most min(log2_messages/k, (log2 q - entropy_bits/k + h(epsilon)/k)/(1-epsilon)),
/// where entropy_bits is the entropy of the k-block the decoder faces.
/// @throws ValidationError unless block_len >= 1, 0 <= epsilon < 1,
///         log2_messages >= 0, entropy_bits >= 0.
double fano_rate_bound(const Alphabet& alphabet, unsigned block_len,
                       double epsilon, double log2_messages, double entropy_bits);

/// Lower envelope on the guaranteed rate gap between the best block-k reference
/// and any universal scheme at horizon n, as a function of tau = q^k / n:
/// floor(log2(k*tau)/log2 q) * log2(q)/(2k) when tau > q/k, else tau*log2(q)/(2q).
/// Nonincreasing in n for fixed (k, q).
/// @throws ValidationError unless block_len >= 1, n >= 1.
double redundancy_lower(std::size_t n, unsigned block_len, const Alphabet& alphabet);

/// Upper envelope on the same gap (valid for tau = q^k / n <= 1):
/// (tau/2)*log2(1/tau) + (k*tau^2/4 + tau)*log2 e + deviation_overhead(n, q)
/// + (k/n)*log2(e*q).  Decomposes as mixture_overhead + deviation_overhead
/// + (k/n)*log2 q.
/// @throws ValidationError if q^k > n.
double redundancy_upper(std::size_t n, unsigned block_len, const Alphabet& alphabet);

/// Per-symbol cost of the block-mixture coder relative to the best empirical
/// block distribution of the sequence (valid for tau = q^k / n <= 1):
/// (tau/2)*log2(1/tau) + (k*tau^2/4 + tau + k/n)*log2 e.
/// @throws ValidationError if q^k > n.
double mixture_overhead(std::size_t n, unsigned block_len, const Alphabet& alphabet);

/// Concentration term 4*sqrt(log2(q) * log2(n^2 * q) / n) absorbed into
/// redundancy_upper: the price of estimating block statistics from one
/// realization of length n.
/// @throws ValidationError unless n >= 1.
double deviation_overhead(std::size_t n, const Alphabet& alphabet);

/// The map g(tau) = tau * log2(1/tau), increasing on (0, 1/e].
/// @throws ValidationError unless 0 < tau <= 1.
double tau_entropy(double tau);

/// Inverse of tau_entropy on its increasing branch (0, 1/e], by bisection to
/// 1e-12 absolute.  Arguments at or above the branch maximum g(1/e) return 1/e.
/// @throws ValidationError unless y > 0.
double tau_entropy_inverse(double y);

/// Two-sided estimate of the horizon n at which redundancy level delta first
/// becomes guaranteeable for block length k.
struct CriticalLengthBounds {
    double lower;        ///< n below this cannot reach delta
    double upper;        ///< n at or above this suffices (+inf if not derivable)
    bool upper_finite;   ///< false when delta is too small for the upper argument
};

/// lower = (k/q) * q^((1-2*delta)*k);  upper = q^k / min(T, 1/k) with
/// T = tau_entropy_inverse((delta - 12*q^(-k/2)) * log2(q) / 3), infinite when
/// the argument is <= 0.
/// @throws ValidationError unless block_len >= 1 and delta > 0.
CriticalLengthBounds critical_length_bounds(unsigned block_len, double delta,
                                            const Alphabet& alphabet);

/// Worst-case pointwise redundancy of the Dirichlet(1/2) i.i.d. mixture over
/// an m-letter alphabet after l observations (Shtarkov-style bound).
struct MixtureRedundancy {
    double normalization_bits;  ///< C_m = log2(Gamma(1/2)^m / Gamma(m/2))
    double worst_case_bits;     ///< ((m-1)/2)*log2(l/(2*pi)) + C_m + (m^2/(4l) + m/2)*log2 e
};

/// @throws ValidationError unless samples >= 1 and letters >= 2.
MixtureRedundancy iid_mixture_redundancy(std::uint64_t samples, std::uint64_t letters);

} // namespace moducom::bounds
