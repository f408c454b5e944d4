/**
 * @file bounds.cpp
 * @brief Rate identities and redundancy envelopes (see bounds.hpp).
 */

#include "moducom/bounds/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "moducom/core/errors.hpp"
#include "moducom/srccode/lz78.hpp"

namespace moducom::bounds {

namespace {

constexpr double kLog2E = 1.4426950408889634;  // log2(e)
constexpr double kInvE = 0.36787944117144233;  // 1/e, argmax of tau*log2(1/tau)

double log2_q(const Alphabet& alphabet) { return std::log2(static_cast<double>(alphabet.q())); }

/// q^k as a double; exact while within 2^53, adequate for rate formulas beyond.
double pow_q(const Alphabet& alphabet, unsigned k) {
    return std::pow(static_cast<double>(alphabet.q()), static_cast<double>(k));
}

double block_fraction(std::size_t n, unsigned block_len, const Alphabet& alphabet) {
    require(block_len >= 1, "block length must be at least 1");
    require(n >= 1, "sequence length must be at least 1");
    return pow_q(alphabet, block_len) / static_cast<double>(n);
}

double require_small_fraction(std::size_t n, unsigned block_len, const Alphabet& alphabet) {
    const double tau = block_fraction(n, block_len, alphabet);
    require(tau <= 1.0, "needs q^k <= n (got q^k/n = " + std::to_string(tau) + ")");
    return tau;
}

}  // namespace

double binary_entropy(double p) {
    require(p >= 0.0 && p <= 1.0, "probability must lie in [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double effective_rate(double rate, double epsilon, unsigned block_len) {
    require(rate >= 0.0, "rate must be nonnegative");
    require(epsilon >= 0.0 && epsilon <= 1.0, "error level must lie in [0, 1]");
    require(block_len >= 1, "block length must be at least 1");
    const double net =
        (1.0 - epsilon) * rate - binary_entropy(epsilon) / static_cast<double>(block_len);
    return net > 0.0 ? net : 0.0;
}

double compressibility_capacity(const SymbolSeq& z) {
    const auto summary = srccode::lz78_compress(z);
    return (1.0 - summary.compression_ratio) * log2_q(z.alphabet());
}

double fano_rate_bound(const Alphabet& alphabet, unsigned block_len, double epsilon,
                       double log2_messages, double entropy_bits) {
    require(block_len >= 1, "block length must be at least 1");
    require(epsilon >= 0.0 && epsilon < 1.0, "error level must lie in [0, 1)");
    require(log2_messages >= 0.0, "message set size must be at least 1");
    require(entropy_bits >= 0.0, "entropy must be nonnegative");
    const double k = static_cast<double>(block_len);
    const double converse =
        (log2_q(alphabet) - entropy_bits / k + binary_entropy(epsilon) / k) / (1.0 - epsilon);
    const double trivial = log2_messages / k;
    return converse < trivial ? converse : trivial;
}

double redundancy_lower(std::size_t n, unsigned block_len, const Alphabet& alphabet) {
    const double tau = block_fraction(n, block_len, alphabet);
    const double lq = log2_q(alphabet);
    const double k = static_cast<double>(block_len);
    const double q = static_cast<double>(alphabet.q());
    if (tau > q / k) return std::floor(std::log2(k * tau) / lq) * lq / (2.0 * k);
    return tau * lq / (2.0 * q);
}

double redundancy_upper(std::size_t n, unsigned block_len, const Alphabet& alphabet) {
    const double tau = require_small_fraction(n, block_len, alphabet);
    const double k = static_cast<double>(block_len);
    const double per_block = static_cast<double>(block_len) / static_cast<double>(n);
    const double shape = tau < 1.0 ? (tau / 2.0) * std::log2(1.0 / tau) : 0.0;
    return shape + (k * tau * tau / 4.0 + tau) * kLog2E + deviation_overhead(n, alphabet) +
           per_block * (kLog2E + log2_q(alphabet));
}

double mixture_overhead(std::size_t n, unsigned block_len, const Alphabet& alphabet) {
    const double tau = require_small_fraction(n, block_len, alphabet);
    const double k = static_cast<double>(block_len);
    const double per_block = static_cast<double>(block_len) / static_cast<double>(n);
    const double shape = tau < 1.0 ? (tau / 2.0) * std::log2(1.0 / tau) : 0.0;
    return shape + (k * tau * tau / 4.0 + tau + per_block) * kLog2E;
}

double deviation_overhead(std::size_t n, const Alphabet& alphabet) {
    require(n >= 1, "sequence length must be at least 1");
    const double nd = static_cast<double>(n);
    const double lq = log2_q(alphabet);
    return 4.0 * std::sqrt(lq * (2.0 * std::log2(nd) + lq) / nd);
}

double tau_entropy(double tau) {
    require(tau > 0.0 && tau <= 1.0, "argument must lie in (0, 1]");
    return tau < 1.0 ? tau * std::log2(1.0 / tau) : 0.0;
}

double tau_entropy_inverse(double y) {
    require(y > 0.0, "argument must be positive");
    double lo = 1e-15;
    double hi = kInvE;
    if (y >= tau_entropy(hi)) return hi;
    if (y <= tau_entropy(lo)) return lo;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (tau_entropy(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

CriticalLengthBounds critical_length_bounds(unsigned block_len, double delta,
                                            const Alphabet& alphabet) {
    require(block_len >= 1, "block length must be at least 1");
    require(delta > 0.0, "redundancy level must be positive");
    const double k = static_cast<double>(block_len);
    const double q = static_cast<double>(alphabet.q());
    const double lq = log2_q(alphabet);

    CriticalLengthBounds out{};
    out.lower = (k / q) * std::pow(q, (1.0 - 2.0 * delta) * k);

    const double arg = (delta - 12.0 * std::pow(q, -k / 2.0)) * lq / 3.0;
    if (arg <= 0.0) {
        out.upper = std::numeric_limits<double>::infinity();
        out.upper_finite = false;
        return out;
    }
    const double t = tau_entropy_inverse(arg);
    const double cap = t < 1.0 / k ? t : 1.0 / k;
    out.upper = pow_q(alphabet, block_len) / cap;
    out.upper_finite = true;
    return out;
}

MixtureRedundancy iid_mixture_redundancy(std::uint64_t samples, std::uint64_t letters) {
    require(samples >= 1, "sample count must be at least 1");
    require(letters >= 2, "alphabet must have at least 2 letters");
    const double l = static_cast<double>(samples);
    const double m = static_cast<double>(letters);
    const double pi = 3.141592653589793;
    MixtureRedundancy out{};
    out.normalization_bits = (m / 2.0) * std::log2(pi) - std::lgamma(m / 2.0) * kLog2E;
    out.worst_case_bits = ((m - 1.0) / 2.0) * std::log2(l / (2.0 * pi)) + out.normalization_bits +
                          (m * m / (4.0 * l) + m / 2.0) * kLog2E;
    return out;
}

}  // namespace moducom::bounds
