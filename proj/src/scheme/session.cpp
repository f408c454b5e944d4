/**
 * @file session.cpp
 * @brief Rateless feedback session engine (see session.hpp).
 *
 * The decoding loop processes symbols in chunks of up to 32: within one
 * block the channel output is independent of feedback, so codebook rows and
 * received symbols can be precomputed per chunk, and each hypothesis then
 * consumes the chunk in a tight inner loop. A chunk is never cut short by a
 * passing hypothesis: extra symbols fed to the doomed hypothesis states are
 * discarded at the block boundary, while the shared coder is resynchronized
 * strictly up to the terminating symbol.
 *
 * Threshold folding keeps the inner loop comparison-only. For the integer
 * metric the stopping rule
 *     lt_hyp - ls_prefix <= floor(u*log2 q - log2(n/eps) - K)
 * is rearranged per position into a bound on the hypothesis's pending-phrase
 * length (the self-delimiting tail depends only on the fed count, which is
 * the same for every hypothesis); the real-valued metric folds ls_prefix
 * into the threshold directly.
 */

#include "moducom/scheme/session.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>

#include "moducom/core/errors.hpp"
#include "moducom/core/rng.hpp"
#include "moducom/scheme/codebook.hpp"
#include "moducom/scheme/rates.hpp"
#include "moducom/srccode/kt_mixture.hpp"
#include "moducom/srccode/lz78.hpp"

namespace moducom::scheme {

MessageSource MessageSource::random(std::uint64_t seed) {
    MessageSource src;
    src.random_ = true;
    src.key_ = core::prf64(seed ^ core::domain::message, 0);
    return src;
}

MessageSource MessageSource::fixed_bits(std::vector<std::uint8_t> bits) {
    require(!bits.empty(), "message pattern must not be empty");
    for (auto b : bits) require(b <= 1, "message pattern entries must be bits");
    MessageSource src;
    src.random_ = false;
    src.pattern_ = std::move(bits);
    return src;
}

std::uint32_t MessageSource::next(unsigned bits) {
    require(bits >= 1 && bits <= 32, "bit count must lie in [1, 32]");
    if (random_) {
        const std::uint64_t word = core::prf64(key_, counter_++);
        return static_cast<std::uint32_t>(word & ((std::uint64_t{1} << bits) - 1));
    }
    std::uint32_t value = 0;
    for (unsigned i = 0; i < bits; ++i) {
        value = (value << 1) | pattern_[pos_];
        pos_ = (pos_ + 1) % pattern_.size();
    }
    return value;
}

namespace {

constexpr std::size_t kChunk = 32;

template <MetricKind kMetric>
SessionLog run_impl(const SchemeConfig& cfg, const SymbolSeq& noise, MessageSource& messages) {
    constexpr bool kLz = kMetric == MetricKind::lz78;

    const std::size_t n = cfg.n;
    const unsigned q = cfg.alphabet.q();
    const double lq = std::log2(static_cast<double>(q));
    const std::uint32_t message_count = std::uint32_t{1} << cfg.block_bits;
    const double offset = static_cast<double>(cfg.block_bits) +
                          std::log2(static_cast<double>(n) / cfg.epsilon);
    const Codebook codebook(cfg.seed, cfg.alphabet);
    const unsigned kt_depth =
        cfg.kt_k_max != 0 ? cfg.kt_k_max
                          : srccode::KtMixtureCoder::default_k_max(cfg.alphabet, n);

    auto make_coder = [&] {
        if constexpr (kLz)
            return srccode::Lz78Coder(cfg.alphabet);
        else
            return srccode::KtMixtureCoder(cfg.alphabet, kt_depth);
    };
    auto shared = make_coder();

    using HypVec = std::conditional_t<kLz, std::vector<srccode::Lz78Overlay>,
                                      std::vector<srccode::KtMixtureCoder>>;
    HypVec hyps;
    if constexpr (kLz)
        hyps.assign(message_count, srccode::Lz78Overlay(cfg.alphabet));
    else
        hyps.assign(message_count, shared);

    using Captured = std::conditional_t<kLz, std::uint64_t, double>;
    using Threshold = std::conditional_t<kLz, std::int64_t, double>;
    std::vector<std::size_t> first_pass(message_count);
    std::vector<Captured> captured(message_count);
    std::array<std::uint64_t, kChunk> rows{};
    std::array<Symbol, kChunk> received{};
    std::array<Threshold, kChunk> thresholds{};

    SessionLog log{};
    std::size_t consumed = 0;  // channel uses closed by decoded blocks
    std::uint64_t block = 0;

    while (consumed < n) {
        const std::uint32_t sent = messages.next(cfg.block_bits);

        std::uint64_t ls_prefix_int = 0;
        double ls_prefix = 0.0;
        if constexpr (kLz) {
            ls_prefix_int = shared.ls_bits();
            ls_prefix = static_cast<double>(ls_prefix_int);
            for (auto& h : hyps) h.rebind(shared);
        } else {
            ls_prefix = shared.neglog2_prob();
            for (auto& h : hyps) h = shared;
        }
        std::fill(first_pass.begin(), first_pass.end(), std::size_t{0});

        std::size_t fed_in_block = 0;
        std::size_t stop = 0;  // in-block 1-based index of the terminating symbol
        std::uint32_t winner = 0;

        while (consumed + fed_in_block < n && stop == 0) {
            const std::size_t chunk = std::min(kChunk, n - (consumed + fed_in_block));
            for (std::size_t c = 0; c < chunk; ++c) {
                const std::size_t u = fed_in_block + c + 1;  // in-block, 1-based
                const std::size_t i = consumed + u;          // absolute, 1-based
                rows[c] = codebook.row(block, fed_in_block + c);
                received[c] = core::mod_add_sym(codebook.symbol_in_row(rows[c], sent),
                                                noise[i - 1], q);
                const double raw = static_cast<double>(u) * lq - offset;
                if constexpr (kLz)
                    thresholds[c] =
                        static_cast<std::int64_t>(std::floor(raw)) +
                        static_cast<std::int64_t>(ls_prefix_int) -
                        static_cast<std::int64_t>(srccode::elias_gamma_length(i + 1));
                else
                    thresholds[c] = raw + ls_prefix;
            }

            for (std::uint32_t m = 0; m < message_count; ++m) {
                auto& h = hyps[m];
                for (std::size_t c = 0; c < chunk; ++c) {
                    h.feed(core::mod_sub_sym(received[c], codebook.symbol_in_row(rows[c], m), q));
                    if (first_pass[m] != 0) continue;
                    if constexpr (kLz) {
                        if (static_cast<std::int64_t>(h.ls_plus_ref_bits()) <= thresholds[c]) {
                            first_pass[m] = fed_in_block + c + 1;
                            captured[m] = h.ls_plus_ref_bits();
                        }
                    } else {
                        const double len = h.neglog2_prob();
                        if (len <= thresholds[c]) {
                            first_pass[m] = fed_in_block + c + 1;
                            captured[m] = len;
                        }
                    }
                }
            }

            // Earliest terminating symbol in this chunk; smallest message on ties.
            for (std::uint32_t m = 0; m < message_count; ++m)
                if (first_pass[m] != 0 && (stop == 0 || first_pass[m] < stop)) {
                    stop = first_pass[m];
                    winner = m;
                }
            fed_in_block += chunk;
        }

        if (stop == 0) {
            log.final_block_start = consumed + 1;  // trailing block, never decoded
            break;
        }

        const std::size_t last = consumed + stop;
        for (std::size_t t = 0; t < stop; ++t) {
            const std::uint64_t row = codebook.row(block, t);
            const Symbol y = core::mod_add_sym(codebook.symbol_in_row(row, sent),
                                               noise[consumed + t], q);
            shared.feed(core::mod_sub_sym(y, codebook.symbol_in_row(row, winner), q));
        }

        double lt_end = 0.0;
        if constexpr (kLz) {
            const std::uint64_t expect =
                captured[winner] + srccode::elias_gamma_length(last + 1);
            if (shared.lt_bits() != expect)
                throw InvariantError(
                    "resynchronized coder length deviates from the winning hypothesis");
            lt_end = static_cast<double>(shared.lt_bits());
        } else {
            lt_end = shared.neglog2_prob();
            if (lt_end != captured[winner])
                throw InvariantError(
                    "resynchronized coder length deviates from the winning hypothesis");
        }

        BlockRecord rec;
        rec.first = consumed + 1;
        rec.last = last;
        rec.decoded = winner;
        rec.sent = sent;
        rec.correct = winner == sent;
        rec.ls_at_start = ls_prefix;
        rec.lt_at_end = lt_end;
        log.blocks.push_back(rec);
        if (!rec.correct) log.error = true;
        consumed = last;
        ++block;
    }

    log.decoded_blocks = log.blocks.size();
    log.decoded_bits = static_cast<std::uint64_t>(log.decoded_blocks) * cfg.block_bits;
    log.actual_rate = static_cast<double>(log.decoded_bits) / static_cast<double>(n);

    auto fresh = make_coder();
    fresh.feed_all(noise);
    double max_gap = 0.0;
    if constexpr (kLz) {
        log.lt_true_bits = static_cast<double>(fresh.lt_bits());
        max_gap = static_cast<double>(srccode::Lz78Coder::max_gap_bits(n));
    } else {
        log.lt_true_bits = fresh.neglog2_prob();
    }
    log.empirical_rate_value = empirical_rate(log.lt_true_bits, n, cfg.alphabet);
    log.rate_floor_value = rate_floor(log.lt_true_bits, n, cfg.alphabet,
                                      static_cast<double>(cfg.block_bits), cfg.epsilon, max_gap);
    return log;
}

}  // namespace

SessionLog run_session(const SchemeConfig& config, const SymbolSeq& noise,
                       MessageSource& messages) {
    config.validate();
    require(noise.size() == config.n, "noise length must equal the configured horizon");
    require(noise.alphabet() == config.alphabet, "noise alphabet must match the configuration");
    return config.metric == MetricKind::lz78
               ? run_impl<MetricKind::lz78>(config, noise, messages)
               : run_impl<MetricKind::kt>(config, noise, messages);
}

}  // namespace moducom::scheme
