#pragma once

/**
 * @file kt_mixture.hpp
 * @brief Sequential probability assignment by a weighted mixture of
 *        add-half (Krichevsky–Trofimov) block estimators.
 *
 * For each super-block length k in 1..k_max, the component P_k treats the
 * input as i.i.d. blocks over the super-alphabet of m = q^k block values and
 * assigns the KT predictive probability
 *     Pr(next block = a) = (n_a + 1/2) / (t + m/2)
 * after t completed blocks of which n_a equaled a. A block in progress
 * contributes its exact marginal: with r of k symbols seen, the probability
 * that the running block starts with that prefix is
 *     (n_prefix + q^{k-r}/2) / (t + m/2),
 * maintained incrementally as one count-ratio factor per symbol. The overall
 * assignment is the sub-probability P(z) = sum_k 2^{-k} P_k(z); the coder's
 * length is -log2 P(z), real-valued, identical terminated and unterminated
 * (the information needed to stop is already paid for by the marginals).
 *
 * Everything runs in the log domain; component lengths far above the current
 * minimum are skipped when combining, which cannot change the sum at double
 * precision.
 */

#include <cstdint>
#include <vector>

#include "moducom/srccode/coder.hpp"

namespace moducom::srccode {

class KtMixtureCoder final : public SequentialCoder {
public:
    KtMixtureCoder(const Alphabet& alphabet, unsigned k_max);

    /// Largest k with q^k <= n, clamped to [1, 12]: deeper components than
    /// the data can fill only dilute the mixture weight.
    static unsigned default_k_max(const Alphabet& alphabet, std::size_t n) noexcept;

    const Alphabet& alphabet() const noexcept override { return alphabet_; }
    std::size_t fed() const noexcept override { return fed_; }
    unsigned k_max() const noexcept { return static_cast<unsigned>(comps_.size()); }

    void feed(Symbol s) override;

    /// -log2 of the mixture sub-probability of everything fed so far.
    double neglog2_prob() const;

    /// -log2 P_k for one component (1-based k), for cross-checks.
    double component_neglog2(unsigned k) const;

    double unterminated_bits() const override { return neglog2_prob(); }
    double terminated_bits() const override { return neglog2_prob(); }
    bool integer_lengths() const noexcept override { return false; }
    double max_length_gap(std::size_t) const override { return 0.0; }

    std::unique_ptr<SequentialCoder> clone() const override {
        return std::make_unique<KtMixtureCoder>(*this);
    }

private:
    struct Component {
        unsigned k = 1;
        std::vector<std::int32_t> kids;   ///< count-trie children, node*q + s
        std::vector<std::uint32_t> count; ///< completed blocks through each node
        std::vector<double> tail_half;    ///< q^{k-r}/2 for partial depth r = 0..k
        std::vector<std::int32_t> path;   ///< nodes of the running block, depth 1..r
        std::int32_t cur = 0;             ///< node of the running block's prefix
        unsigned r = 0;                   ///< symbols of the running block seen
        double neglog2 = 0.0;             ///< -log2 P_k of everything fed
    };

    void feed_component(Component& comp, Symbol s);

    Alphabet alphabet_;
    std::size_t fed_ = 0;
    std::vector<Component> comps_;
};

} // namespace moducom::srccode
