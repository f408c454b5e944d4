#pragma once

/**
 * @file experiment.hpp
 * @brief Reference-vs-universal rate comparison on a shared-suffix noise draw.
 *
 * Draws one noise sequence from the shared-suffix construction, runs the
 * universal feedback scheme on it, and reports both the zero-error reference
 * rate (d/k) log2 q — achievable by the prefix/suffix code whose decoder
 * knows the sequence — and the universal session's error-penalized effective
 * rate. The gap between them is one sample of the price of universality; no
 * single draw proves a minimax statement, the experiment only exhibits the
 * trend.
 */

#include <cstddef>
#include <cstdint>

#include "moducom/scheme/config.hpp"
#include "moducom/scheme/session.hpp"

namespace moducom::refsys {

/// One draw of the reference-vs-universal comparison.
struct RedundancyResult {
    double reference_rate = 0.0;  ///< (d/k) log2 q, the zero-error reference
    double universal_rate = 0.0;  ///< effective_rate(R_act, epsilon, n)
    double gap = 0.0;             ///< reference_rate - universal_rate
    bool session_error = false;   ///< the universal session decoded a block wrong
    scheme::SessionLog log;       ///< full universal-session outcome
};

/**
 * Run the comparison at horizon n: noise from the shared-suffix construction
 * with parameters (k, d) seeded by config.seed, messages drawn from the same
 * seed's message stream, the session configured as `config` with its horizon
 * replaced by n.
 *
 * @throws ValidationError on invalid (k, d) or config.
 */
RedundancyResult redundancy_experiment(unsigned k, unsigned d, std::size_t n,
                                       const scheme::SchemeConfig& config);

} // namespace moducom::refsys
