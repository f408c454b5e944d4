/**
 * @file rates.cpp
 * @brief Rate formulas and config validation (see rates.hpp, config.hpp).
 */

#include "moducom/scheme/rates.hpp"

#include <cmath>
#include <string>

#include "moducom/core/errors.hpp"

namespace moducom::scheme {

void SchemeConfig::validate() const {
    require(n >= 1, "horizon must be at least 1");
    require(block_bits >= 1 && block_bits <= kBlockBitsCap,
            "bits per block must lie in [1, " + std::to_string(kBlockBitsCap) + "]");
    require(epsilon > 0.0 && epsilon < 1.0, "error target must lie in (0, 1)");
    const std::uint64_t hypotheses = std::uint64_t{1} << block_bits;
    require(hypotheses <= work_budget / n,
            "2^K * n exceeds the work budget; lower K, n, or raise the budget");
    if (metric == MetricKind::kt && kt_k_max != 0) {
        // Same feasibility rule the coder itself enforces; failing here keeps
        // the error at configuration time.
        require(kt_k_max * std::log2(static_cast<double>(alphabet.q())) <= 52.0,
                "mixture depth overflows exact block-count arithmetic");
    }
}

namespace {

void require_scalars(std::size_t n, double epsilon, double max_gap_bits) {
    require(n >= 1, "horizon must be at least 1");
    require(epsilon > 0.0 && epsilon < 1.0, "error target must lie in (0, 1)");
    require(max_gap_bits >= 0.0, "length gap bound must be nonnegative");
}

double log2_q(const Alphabet& alphabet) { return std::log2(static_cast<double>(alphabet.q())); }

}  // namespace

BlockBitsChoice choose_block_bits(std::size_t n, const Alphabet& alphabet, double epsilon,
                                  double max_gap_bits) {
    require_scalars(n, epsilon, max_gap_bits);
    const double q = static_cast<double>(alphabet.q());
    const double a = log2_q(alphabet) * (std::log2(q * static_cast<double>(n) / epsilon) + max_gap_bits);
    const double uncapped = std::ceil(std::sqrt(a * static_cast<double>(n)));

    BlockBitsChoice out{};
    out.uncapped = uncapped;
    out.capped = uncapped > static_cast<double>(kBlockBitsCap);
    out.block_bits =
        out.capped ? kBlockBitsCap : static_cast<unsigned>(uncapped < 1.0 ? 1.0 : uncapped);
    return out;
}

double empirical_rate(double lt_bits, std::size_t n, const Alphabet& alphabet) {
    require(n >= 1, "horizon must be at least 1");
    require(lt_bits >= 0.0, "coded length must be nonnegative");
    return log2_q(alphabet) - lt_bits / static_cast<double>(n);
}

double rate_floor(double lt_true_bits, std::size_t n, const Alphabet& alphabet,
                  double block_bits, double epsilon, double max_gap_bits) {
    require_scalars(n, epsilon, max_gap_bits);
    require(block_bits > 0.0, "bits per block must be positive");
    require(lt_true_bits >= 0.0, "coded length must be nonnegative");
    const double nd = static_cast<double>(n);
    const double lq = log2_q(alphabet);
    const double denom = block_bits + lq + std::log2(nd / epsilon) + max_gap_bits;
    return (block_bits / nd) * ((nd * lq - lt_true_bits) / denom - 1.0);
}

double horizon_overhead(std::size_t n, const Alphabet& alphabet, double epsilon,
                        double max_gap_bits) {
    require_scalars(n, epsilon, max_gap_bits);
    const double nd = static_cast<double>(n);
    const double lq = log2_q(alphabet);
    return 3.0 * std::sqrt((lq / nd) *
                           (std::log2(nd * static_cast<double>(alphabet.q()) / epsilon) +
                            max_gap_bits));
}

bool termination_check(double lt_hyp, double ls_prefix, std::size_t i, std::size_t j,
                       unsigned block_bits, std::size_t n, double epsilon,
                       const Alphabet& alphabet, bool integer_lengths) {
    require(i > j, "the block must contain at least one symbol");
    require(n >= 1, "horizon must be at least 1");
    require(block_bits >= 1, "bits per block must be at least 1");
    require(epsilon > 0.0 && epsilon < 1.0, "error target must lie in (0, 1)");
    double threshold = static_cast<double>(i - j) * log2_q(alphabet) -
                       std::log2(static_cast<double>(n) / epsilon) -
                       static_cast<double>(block_bits);
    if (integer_lengths) threshold = std::floor(threshold);
    return lt_hyp - ls_prefix <= threshold;
}

}  // namespace moducom::scheme
