/**
 * @file test_scheme.cpp
 * @brief Rateless feedback scheme: rate formulas, codebook, termination rule,
 *        and full-session equivalence against a brute-force reference decoder.
 */

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "moducom/core/errors.hpp"
#include "moducom/core/noise.hpp"
#include "moducom/core/rng.hpp"
#include "moducom/scheme/codebook.hpp"
#include "moducom/scheme/config.hpp"
#include "moducom/scheme/rates.hpp"
#include "moducom/scheme/session.hpp"
#include "moducom/srccode/kt_mixture.hpp"
#include "moducom/srccode/lz78.hpp"

using moducom::InvariantError;
using moducom::ValidationError;
using moducom::core::Alphabet;
using moducom::core::NoiseSpec;
using moducom::core::Symbol;
using moducom::core::SymbolSeq;
namespace core = moducom::core;
namespace scheme = moducom::scheme;
namespace srccode = moducom::srccode;

namespace {

const Alphabet q2{2};
const Alphabet q4{4};

/**
 * Brute-force session: clone-per-hypothesis polymorphic coder states, the
 * reference termination_check per symbol, no chunking, no threshold folding.
 * Slow but transparently faithful to the decoding rule; the production
 * engine must reproduce it field by field.
 */
scheme::SessionLog reference_session(const scheme::SchemeConfig& cfg, const SymbolSeq& noise,
                                     scheme::MessageSource& messages) {
    const std::size_t n = cfg.n;
    const unsigned q = cfg.alphabet.q();
    const std::uint32_t message_count = std::uint32_t{1} << cfg.block_bits;
    const scheme::Codebook codebook(cfg.seed, cfg.alphabet);
    const unsigned kt_depth =
        cfg.kt_k_max != 0 ? cfg.kt_k_max
                          : srccode::KtMixtureCoder::default_k_max(cfg.alphabet, n);

    auto fresh_coder = [&]() -> std::unique_ptr<srccode::SequentialCoder> {
        if (cfg.metric == scheme::MetricKind::lz78)
            return std::make_unique<srccode::Lz78Coder>(cfg.alphabet);
        return std::make_unique<srccode::KtMixtureCoder>(cfg.alphabet, kt_depth);
    };
    auto shared = fresh_coder();

    scheme::SessionLog log{};
    std::size_t consumed = 0;
    std::uint64_t block = 0;

    while (consumed < n) {
        const std::uint32_t sent = messages.next(cfg.block_bits);
        const double ls_prefix = shared->unterminated_bits();
        std::vector<std::unique_ptr<srccode::SequentialCoder>> hyps;
        hyps.reserve(message_count);
        for (std::uint32_t m = 0; m < message_count; ++m) hyps.push_back(shared->clone());

        std::size_t stop = 0;
        std::uint32_t winner = 0;
        for (std::size_t u = 1; consumed + u <= n && stop == 0; ++u) {
            const std::size_t i = consumed + u;
            const Symbol y = core::mod_add_sym(codebook.symbol(block, sent, u - 1),
                                               noise[i - 1], q);
            for (std::uint32_t m = 0; m < message_count; ++m)
                hyps[m]->feed(core::mod_sub_sym(y, codebook.symbol(block, m, u - 1), q));
            for (std::uint32_t m = 0; m < message_count && stop == 0; ++m)
                if (scheme::termination_check(hyps[m]->terminated_bits(), ls_prefix, i, consumed,
                                              cfg.block_bits, n, cfg.epsilon, cfg.alphabet,
                                              hyps[m]->integer_lengths())) {
                    stop = u;
                    winner = m;
                }
        }

        if (stop == 0) {
            log.final_block_start = consumed + 1;
            break;
        }
        const std::size_t last = consumed + stop;
        for (std::size_t t = 0; t < stop; ++t) {
            const Symbol y = core::mod_add_sym(codebook.symbol(block, sent, t),
                                               noise[consumed + t], q);
            shared->feed(core::mod_sub_sym(y, codebook.symbol(block, winner, t), q));
        }
        scheme::BlockRecord rec;
        rec.first = consumed + 1;
        rec.last = last;
        rec.decoded = winner;
        rec.sent = sent;
        rec.correct = winner == sent;
        rec.ls_at_start = ls_prefix;
        rec.lt_at_end = shared->terminated_bits();
        log.blocks.push_back(rec);
        if (!rec.correct) log.error = true;
        consumed = last;
        ++block;
    }

    log.decoded_blocks = log.blocks.size();
    log.decoded_bits = static_cast<std::uint64_t>(log.decoded_blocks) * cfg.block_bits;
    log.actual_rate = static_cast<double>(log.decoded_bits) / static_cast<double>(n);

    auto fresh = fresh_coder();
    fresh->feed_all(noise);
    log.lt_true_bits = fresh->terminated_bits();
    log.empirical_rate_value = scheme::empirical_rate(log.lt_true_bits, n, cfg.alphabet);
    log.rate_floor_value =
        scheme::rate_floor(log.lt_true_bits, n, cfg.alphabet,
                           static_cast<double>(cfg.block_bits), cfg.epsilon,
                           fresh->max_length_gap(n));
    return log;
}

/// Field-exact comparison of two session logs (all doubles bit-equal).
void check_logs_equal(const scheme::SessionLog& a, const scheme::SessionLog& b) {
    REQUIRE(a.blocks.size() == b.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        CHECK(a.blocks[i].first == b.blocks[i].first);
        CHECK(a.blocks[i].last == b.blocks[i].last);
        CHECK(a.blocks[i].decoded == b.blocks[i].decoded);
        CHECK(a.blocks[i].sent == b.blocks[i].sent);
        CHECK(a.blocks[i].correct == b.blocks[i].correct);
        CHECK(a.blocks[i].ls_at_start == b.blocks[i].ls_at_start);
        CHECK(a.blocks[i].lt_at_end == b.blocks[i].lt_at_end);
    }
    CHECK(a.decoded_blocks == b.decoded_blocks);
    CHECK(a.decoded_bits == b.decoded_bits);
    CHECK(a.actual_rate == b.actual_rate);
    CHECK(a.error == b.error);
    CHECK(a.final_block_start == b.final_block_start);
    CHECK(a.lt_true_bits == b.lt_true_bits);
    CHECK(a.empirical_rate_value == b.empirical_rate_value);
    CHECK(a.rate_floor_value == b.rate_floor_value);
}

/// Structural invariants every log must satisfy.
void check_log_shape(const scheme::SessionLog& log, const scheme::SchemeConfig& cfg) {
    std::size_t expect_first = 1;
    for (const auto& rec : log.blocks) {
        CHECK(rec.first == expect_first);
        CHECK(rec.last >= rec.first);
        CHECK(rec.last <= cfg.n);
        CHECK(rec.decoded < (std::uint32_t{1} << cfg.block_bits));
        CHECK(rec.correct == (rec.decoded == rec.sent));
        expect_first = rec.last + 1;
    }
    if (log.final_block_start != 0)
        CHECK(log.final_block_start == expect_first);
    else {
        REQUIRE(!log.blocks.empty());
        CHECK(log.blocks.back().last == cfg.n);
    }
    CHECK(log.decoded_blocks == log.blocks.size());
    CHECK(log.decoded_bits == log.decoded_blocks * cfg.block_bits);
    CHECK(log.actual_rate ==
          static_cast<double>(log.decoded_bits) / static_cast<double>(cfg.n));

    // No block may close on its first symbol when the threshold starts negative.
    const double lq = std::log2(static_cast<double>(cfg.alphabet.q()));
    if (cfg.block_bits + std::log2(cfg.n / cfg.epsilon) > lq)
        for (const auto& rec : log.blocks) CHECK(rec.last - rec.first + 1 >= 2);
}

SymbolSeq make_noise(const std::string& spec_text, const Alphabet& alphabet, std::size_t n,
                     std::uint64_t seed) {
    return noise_generate(NoiseSpec::parse(spec_text, alphabet), alphabet, n, seed);
}

}  // namespace

TEST_SUITE("scheme") {

TEST_CASE("message source: fixed patterns cycle and random streams replay") {
    auto fixed = scheme::MessageSource::fixed_bits({1, 0});
    CHECK(fixed.next(3) == 5);  // bits 1,0,1
    CHECK(fixed.next(3) == 2);  // bits 0,1,0
    CHECK(fixed.next(1) == 1);

    auto a = scheme::MessageSource::random(42);
    auto b = scheme::MessageSource::random(42);
    auto c = scheme::MessageSource::random(43);
    bool all_equal = true;
    bool any_diff_seed = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next(16);
        all_equal = all_equal && va == b.next(16);
        any_diff_seed = any_diff_seed || va != c.next(16);
        CHECK(va < (1u << 16));
    }
    CHECK(all_equal);
    CHECK(any_diff_seed);

    CHECK_THROWS_AS(scheme::MessageSource::fixed_bits({}), ValidationError);
    CHECK_THROWS_AS(scheme::MessageSource::fixed_bits({2}), ValidationError);
    CHECK_THROWS_AS(a.next(0), ValidationError);
    CHECK_THROWS_AS(a.next(33), ValidationError);
}

TEST_CASE("codebook: common randomness, per-message split, coarse uniformity") {
    const scheme::Codebook enc(99, q4);
    const scheme::Codebook dec(99, q4);
    const scheme::Codebook other(100, q4);

    bool identical = true;
    bool any_different = false;
    for (std::uint64_t b = 0; b < 4; ++b)
        for (std::uint32_t m = 0; m < 8; ++m)
            for (std::uint64_t t = 0; t < 32; ++t) {
                const Symbol s = enc.symbol(b, m, t);
                identical = identical && s == dec.symbol(b, m, t);
                identical = identical && s == enc.symbol_in_row(enc.row(b, t), m);
                any_different = any_different || s != other.symbol(b, m, t);
                CHECK(s < 4);
            }
    CHECK(identical);
    CHECK(any_different);

    // Chi-square on 10^4 draws of one message's codeword symbols, q=4, 3 df.
    std::array<std::uint64_t, 4> counts{};
    for (std::uint64_t t = 0; t < 10000; ++t) ++counts[enc.symbol(0, 5, t)];
    double chi2 = 0.0;
    for (std::uint64_t c : counts) {
        const double diff = static_cast<double>(c) - 2500.0;
        chi2 += diff * diff / 2500.0;
    }
    CHECK(chi2 < 16.27);  // 99.9th percentile of chi-square with 3 df
}

TEST_CASE("block size choice: pinned values, cap behavior, monotonicity") {
    const auto capped = scheme::choose_block_bits(4096, q2, 0.05, 40.0);
    CHECK(capped.uncapped == 485.0);
    CHECK(capped.capped);
    CHECK(capped.block_bits == scheme::kBlockBitsCap);

    const auto small = scheme::choose_block_bits(4, q2, 0.5, 0.0);
    CHECK(small.uncapped == 4.0);  // sqrt(log2(16) * 4) exactly
    CHECK_FALSE(small.capped);
    CHECK(small.block_bits == 4);

    double prev = 0.0;
    for (unsigned j = 4; j <= 24; j += 2) {
        const auto choice = scheme::choose_block_bits(std::size_t{1} << j, q2, 0.05, 30.0);
        CHECK(choice.uncapped >= prev);
        prev = choice.uncapped;
    }

    CHECK_THROWS_AS(scheme::choose_block_bits(0, q2, 0.05, 40.0), ValidationError);
    CHECK_THROWS_AS(scheme::choose_block_bits(16, q2, 0.0, 40.0), ValidationError);
    CHECK_THROWS_AS(scheme::choose_block_bits(16, q2, 0.05, -1.0), ValidationError);
}

TEST_CASE("rate formulas: pinned values and vacuous regimes") {
    CHECK(scheme::empirical_rate(1024.0, 4096, q2) == 0.75);
    CHECK(scheme::empirical_rate(0.0, 100, q4) == 2.0);
    CHECK(scheme::empirical_rate(200.0, 100, q2) == doctest::Approx(-1.0));

    CHECK(scheme::rate_floor(500.0, std::size_t{1} << 15, q2, 14.0, 0.05, 46.0) ==
          doctest::Approx(0.17121177303983734).epsilon(1e-15));
    CHECK(scheme::rate_floor(32768.0, std::size_t{1} << 15, q2, 14.0, 0.05, 46.0) < 0.0);

    CHECK(scheme::horizon_overhead(4096, q2, 0.05, 40.0) ==
          doctest::Approx(0.3548964668204204).epsilon(1e-15));
    const double big = scheme::horizon_overhead(
        std::size_t{1} << 12, q2, 0.05,
        static_cast<double>(srccode::Lz78Coder::max_gap_bits(std::size_t{1} << 12)));
    const double small = scheme::horizon_overhead(
        std::size_t{1} << 20, q2, 0.05,
        static_cast<double>(srccode::Lz78Coder::max_gap_bits(std::size_t{1} << 20)));
    CHECK(small < big);

    CHECK_THROWS_AS(scheme::rate_floor(-1.0, 100, q2, 4.0, 0.05, 0.0), ValidationError);
    CHECK_THROWS_AS(scheme::rate_floor(0.0, 100, q2, 0.0, 0.05, 0.0), ValidationError);
}

TEST_CASE("uncapped block size keeps the floor within the horizon overhead") {
    // The floor with the balance-optimal K never trails the empirical rate by
    // more than the horizon overhead, across alphabets, horizons, noise
    // compressibility fractions, and error targets.
    int checked = 0;
    for (const Alphabet& alphabet : {q2, q4})
        for (unsigned j = 10; j <= 20; j += 2)
            for (double frac : {0.0, 0.3, 0.7, 1.0})
                for (double eps : {0.01, 0.05, 0.2}) {
                    const std::size_t n = std::size_t{1} << j;
                    const double gap =
                        static_cast<double>(srccode::Lz78Coder::max_gap_bits(n));
                    const double lq = std::log2(static_cast<double>(alphabet.q()));
                    const double lt = frac * static_cast<double>(n) * lq;
                    const double kstar =
                        scheme::choose_block_bits(n, alphabet, eps, gap).uncapped;
                    const double floor_val =
                        scheme::rate_floor(lt, n, alphabet, kstar, eps, gap);
                    const double target = scheme::empirical_rate(lt, n, alphabet) -
                                          scheme::horizon_overhead(n, alphabet, eps, gap);
                    CHECK(floor_val + 1e-9 >= target);
                    ++checked;
                }
    CHECK(checked == 144);
}

TEST_CASE("termination rule: first-symbol safety and exact crossing") {
    for (bool integer : {true, false}) {
        CHECK_FALSE(scheme::termination_check(0.0, 0.0, 1, 0, 12, 4096, 0.05, q2, integer));
        // Zero-gap hypothesis: threshold crosses zero at span 29 for these
        // parameters (K + log2(n/eps) = 28.32...).
        CHECK_FALSE(scheme::termination_check(0.0, 0.0, 28, 0, 12, 4096, 0.05, q2, integer));
        CHECK(scheme::termination_check(0.0, 0.0, 29, 0, 12, 4096, 0.05, q2, integer));
    }
    // Span 31 gives threshold 2.678...; a gap of 2.5 sits between the floored
    // and raw values, separating the two metric flavors.
    CHECK_FALSE(scheme::termination_check(36.5, 34.0, 31, 0, 12, 4096, 0.05, q2, true));
    CHECK(scheme::termination_check(36.5, 34.0, 31, 0, 12, 4096, 0.05, q2, false));
    // An integer gap equal to the floored threshold passes either way.
    CHECK(scheme::termination_check(36.0, 34.0, 31, 0, 12, 4096, 0.05, q2, true));
    CHECK(scheme::termination_check(36.0, 34.0, 31, 0, 12, 4096, 0.05, q2, false));
    CHECK_THROWS_AS(scheme::termination_check(0.0, 0.0, 5, 5, 12, 4096, 0.05, q2, true),
                    ValidationError);
}

TEST_CASE("config validation rejects out-of-range parameters") {
    scheme::SchemeConfig cfg;
    cfg.n = 4096;
    cfg.alphabet = q2;
    cfg.block_bits = 10;
    cfg.epsilon = 0.05;
    cfg.validate();  // baseline OK

    auto broken = cfg;
    broken.block_bits = 0;
    CHECK_THROWS_AS(broken.validate(), ValidationError);
    broken.block_bits = scheme::kBlockBitsCap + 1;
    CHECK_THROWS_AS(broken.validate(), ValidationError);

    broken = cfg;
    broken.epsilon = 0.0;
    CHECK_THROWS_AS(broken.validate(), ValidationError);
    broken.epsilon = 1.0;
    CHECK_THROWS_AS(broken.validate(), ValidationError);

    broken = cfg;
    broken.n = std::size_t{1} << 20;
    broken.block_bits = 14;  // 2^14 * 2^20 = 2^34 > default budget 2^33
    CHECK_THROWS_AS(broken.validate(), ValidationError);
    broken.work_budget = std::uint64_t{1} << 34;
    broken.validate();  // raised budget admits it

    broken = cfg;
    broken.n = 0;
    CHECK_THROWS_AS(broken.validate(), ValidationError);

    auto messages = scheme::MessageSource::random(1);
    CHECK_THROWS_AS(scheme::run_session(cfg, SymbolSeq::zeros(q2, 100), messages),
                    ValidationError);
    CHECK_THROWS_AS(scheme::run_session(cfg, SymbolSeq::zeros(q4, 4096), messages),
                    ValidationError);
}

TEST_CASE("production engine reproduces the brute-force reference decoder") {
    struct Setup {
        const Alphabet& alphabet;
        scheme::MetricKind metric;
        std::string noise;
    };
    const Setup setups[] = {
        {q2, scheme::MetricKind::lz78, "bern:p=0.1"},
        {q2, scheme::MetricKind::kt, "bern:p=0.1"},
        {q4, scheme::MetricKind::lz78, "zero"},
        {q4, scheme::MetricKind::kt, "periodic:0,1,3"},
        {q2, scheme::MetricKind::lz78, "testchannel:k=3,d=1"},
    };
    for (const auto& setup : setups)
        for (std::uint64_t seed : {1ULL, 2ULL}) {
            scheme::SchemeConfig cfg;
            cfg.n = 256;
            cfg.alphabet = setup.alphabet;
            cfg.block_bits = 4;
            cfg.epsilon = 0.1;
            cfg.seed = seed;
            cfg.metric = setup.metric;
            cfg.kt_k_max = 2;
            const auto noise = make_noise(setup.noise, setup.alphabet, cfg.n, seed);

            auto msgs_fast = scheme::MessageSource::random(seed ^ 0xabc);
            auto msgs_ref = scheme::MessageSource::random(seed ^ 0xabc);
            const auto fast = scheme::run_session(cfg, noise, msgs_fast);
            const auto ref = reference_session(cfg, noise, msgs_ref);
            check_logs_equal(fast, ref);
            check_log_shape(fast, cfg);
        }
}

TEST_CASE("identical configurations replay bit-identically") {
    scheme::SchemeConfig cfg;
    cfg.n = 2048;
    cfg.alphabet = q2;
    cfg.block_bits = 8;
    cfg.epsilon = 0.05;
    cfg.seed = 77;
    for (auto metric : {scheme::MetricKind::lz78, scheme::MetricKind::kt}) {
        cfg.metric = metric;
        const auto noise = make_noise("bern:p=0.05", q2, cfg.n, 5);
        auto msgs_a = scheme::MessageSource::random(9);
        auto msgs_b = scheme::MessageSource::random(9);
        const auto a = scheme::run_session(cfg, noise, msgs_a);
        const auto b = scheme::run_session(cfg, noise, msgs_b);
        check_logs_equal(a, b);
    }
}

TEST_CASE("decoding decisions are causal in the noise sequence") {
    scheme::SchemeConfig cfg;
    cfg.n = 2048;
    cfg.alphabet = q2;
    cfg.block_bits = 8;
    cfg.epsilon = 0.05;
    cfg.seed = 31;
    const std::size_t split = 1024;

    const auto z1 = make_noise("bern:p=0.1", q2, cfg.n, 11);
    std::vector<Symbol> altered(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i)
        altered[i] = i < split ? z1[i] : core::mod_add_sym(z1[i], 1, 2);
    const SymbolSeq z2(q2, altered);

    auto msgs_a = scheme::MessageSource::random(3);
    auto msgs_b = scheme::MessageSource::random(3);
    const auto log1 = scheme::run_session(cfg, z1, msgs_a);
    const auto log2 = scheme::run_session(cfg, z2, msgs_b);

    // Blocks completed strictly before the first differing symbol are decided
    // from identical channel prefixes, so they must match exactly.
    std::size_t compared = 0;
    while (compared < log1.blocks.size() && compared < log2.blocks.size() &&
           log1.blocks[compared].last < split && log2.blocks[compared].last < split) {
        CHECK(log1.blocks[compared].last == log2.blocks[compared].last);
        CHECK(log1.blocks[compared].decoded == log2.blocks[compared].decoded);
        CHECK(log1.blocks[compared].lt_at_end == log2.blocks[compared].lt_at_end);
        ++compared;
    }
    CHECK(compared >= 3);  // the prefix actually exercised several blocks
}

TEST_CASE("error-free sessions never fall below the proven rate floor") {
    for (const std::string& noise_text : {std::string("zero"), std::string("bern:p=0.02"),
                                          std::string("periodic:0,1")}) {
        scheme::SchemeConfig cfg;
        cfg.n = 4096;
        cfg.alphabet = q2;
        cfg.block_bits = 10;
        cfg.epsilon = 0.05;
        cfg.seed = 13;
        const auto noise = make_noise(noise_text, q2, cfg.n, 21);
        auto msgs = scheme::MessageSource::random(17);
        const auto log = scheme::run_session(cfg, noise, msgs);
        check_log_shape(log, cfg);
        CHECK_FALSE(log.error);
        CHECK(log.actual_rate >= log.rate_floor_value);  // exact, no tolerance
        CHECK(log.decoded_blocks > 0);
    }
}

TEST_CASE("mixture metric sessions decode and respect their floor") {
    scheme::SchemeConfig cfg;
    cfg.n = 1024;
    cfg.alphabet = q2;
    cfg.block_bits = 8;
    cfg.epsilon = 0.05;
    cfg.seed = 19;
    cfg.metric = scheme::MetricKind::kt;
    cfg.kt_k_max = 3;
    const auto noise = make_noise("bern:p=0.05", q2, cfg.n, 23);
    auto msgs = scheme::MessageSource::random(29);
    const auto log = scheme::run_session(cfg, noise, msgs);
    check_log_shape(log, cfg);
    CHECK_FALSE(log.error);
    CHECK(log.actual_rate >= log.rate_floor_value);
    CHECK(log.decoded_blocks > 0);
}

TEST_CASE("incorrect hypotheses pass the termination test at the bounded rate") {
    // Monte Carlo over uniform noise-estimate streams (what a wrong hypothesis
    // sees): the expected number of (stream, symbol) passes is at most
    // eps / 2^K per stream; the observed deterministic count must stay within
    // twice that budget.
    const std::size_t n = 1024;
    const unsigned block_bits = 6;
    const double eps = 0.1;
    const std::size_t streams = 5000;
    const double offset = block_bits + std::log2(static_cast<double>(n) / eps);

    std::vector<std::int64_t> thresholds(n + 1);
    for (std::size_t u = 1; u <= n; ++u)
        thresholds[u] =
            static_cast<std::int64_t>(std::floor(static_cast<double>(u) - offset));

    std::uint64_t passes = 0;
    for (std::size_t s = 0; s < streams; ++s) {
        srccode::Lz78Coder coder(q2);
        for (std::size_t u = 1; u <= n; ++u) {
            coder.feed(static_cast<Symbol>(core::prf64(0x5eed, s, u) & 1));
            const std::int64_t gap = static_cast<std::int64_t>(coder.lt_bits());
            if (gap <= thresholds[u]) ++passes;
        }
    }
    const double budget = static_cast<double>(streams) * eps / (1u << block_bits);
    CHECK(static_cast<double>(passes) <= 2.0 * budget);
}

}  // TEST_SUITE
