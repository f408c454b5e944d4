#include "moducom/srccode/kt_mixture.hpp"

#include <cmath>

namespace moducom::srccode {

namespace {

/// Mixture terms more than this many bits above the best one cannot move a
/// double-precision sum.
constexpr double kNegligibleBits = 64.0;

} // namespace

KtMixtureCoder::KtMixtureCoder(const Alphabet& alphabet, unsigned k_max) : alphabet_(alphabet) {
    require(k_max >= 1, "mixture needs at least one component");
    require(static_cast<double>(k_max) * alphabet.log2q() <= 52.0,
                  "q^k_max exceeds exact double range; reduce k_max");
    comps_.resize(k_max);
    const unsigned q = alphabet.q();
    for (unsigned k = 1; k <= k_max; ++k) {
        Component& comp = comps_[k - 1];
        comp.k = k;
        comp.kids.assign(q, -1);
        comp.count.assign(1, 0);
        comp.tail_half.resize(k + 1);
        double half = 0.5;
        for (unsigned r = k + 1; r-- > 0;) {
            comp.tail_half[r] = half;
            half *= q;
        }
        comp.path.reserve(k);
    }
}

unsigned KtMixtureCoder::default_k_max(const Alphabet& alphabet, std::size_t n) noexcept {
    unsigned k = 0;
    std::uint64_t power = 1;
    while (k < 12 && power <= n / alphabet.q()) {
        power *= alphabet.q();
        ++k;
    }
    return k == 0 ? 1 : k;
}

void KtMixtureCoder::feed_component(Component& comp, Symbol s) {
    const unsigned q = alphabet_.q();
    std::int32_t next = comp.kids[static_cast<std::size_t>(comp.cur) * q + s];
    if (next < 0) {
        next = static_cast<std::int32_t>(comp.count.size());
        comp.kids[static_cast<std::size_t>(comp.cur) * q + s] = next;
        comp.kids.resize(comp.kids.size() + q, -1);
        comp.count.push_back(0);
    }
    // One factor of the running block's marginal: the ratio of consistent-tail
    // masses one level down.
    const double num = comp.count[static_cast<std::size_t>(next)] + comp.tail_half[comp.r + 1];
    const double den = comp.count[static_cast<std::size_t>(comp.cur)] + comp.tail_half[comp.r];
    comp.neglog2 -= std::log2(num / den);
    comp.path.push_back(next);
    comp.cur = next;
    ++comp.r;
    if (comp.r == comp.k) {
        for (std::int32_t node : comp.path) ++comp.count[static_cast<std::size_t>(node)];
        ++comp.count[0];
        comp.path.clear();
        comp.cur = 0;
        comp.r = 0;
    }
}

void KtMixtureCoder::feed(Symbol s) {
    require(s < alphabet_.q(), "symbol outside alphabet");
    for (Component& comp : comps_) feed_component(comp, s);
    ++fed_;
}

double KtMixtureCoder::neglog2_prob() const {
    // -log2 sum_k 2^{-(k + neglog2_k)}, anchored at the dominant term.
    double best = comps_[0].k + comps_[0].neglog2;
    for (const Component& comp : comps_)
        best = std::min(best, comp.k + comp.neglog2);
    double sum = 0.0;
    for (const Component& comp : comps_) {
        const double excess = comp.k + comp.neglog2 - best;
        if (excess <= kNegligibleBits) sum += std::exp2(-excess);
    }
    return best - std::log2(sum);
}

double KtMixtureCoder::component_neglog2(unsigned k) const {
    require(k >= 1 && k <= comps_.size(), "no such mixture component");
    return comps_[k - 1].neglog2;
}

} // namespace moducom::srccode
