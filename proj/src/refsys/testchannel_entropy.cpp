#include "moducom/refsys/testchannel_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "moducom/core/errors.hpp"

namespace moducom::refsys {

namespace {

void check_enumeration_budget(unsigned k, unsigned d, unsigned i_blocks) {
    require(d >= 1 && d < k, "suffix length must satisfy 1 <= d < k");
    require(k <= 4, "block length above 4 is outside the enumerable regime");
    require(i_blocks >= 1 && i_blocks <= 3,
            "block count outside the enumerable regime (1 <= i <= 3)");
}

} // namespace

double testchannel_entropy_exact(unsigned k, unsigned d, unsigned i_blocks) {
    check_enumeration_budget(k, d, i_blocks);
    const unsigned prefix_len = k - d;
    const unsigned total_bits = i_blocks * k;
    const double prefix_prob = std::ldexp(1.0, -static_cast<int>(prefix_len));
    const double suffix_prob = std::ldexp(1.0, -static_cast<int>(d));

    double entropy = 0.0;
    double total = 0.0;
    std::vector<std::uint32_t> prefixes(i_blocks), suffixes(i_blocks);
    for (std::uint64_t seq = 0; seq < (std::uint64_t{1} << total_bits); ++seq) {
        // Block j occupies bits [j*k, (j+1)*k), most significant bit first
        // within the block: the prefix is the high part.
        for (unsigned j = 0; j < i_blocks; ++j) {
            const auto block =
                static_cast<std::uint32_t>(seq >> ((i_blocks - 1 - j) * k)) & ((1u << k) - 1u);
            prefixes[j] = block >> d;
            suffixes[j] = block & ((1u << d) - 1u);
        }

        double p = 1.0;
        for (unsigned j = 0; j < i_blocks && p != 0.0; ++j) {
            p *= prefix_prob;
            bool fresh = true;
            for (unsigned e = 0; e < j; ++e) {
                if (prefixes[e] == prefixes[j]) {
                    fresh = false;
                    if (suffixes[e] != suffixes[j]) p = 0.0; // reuse is deterministic
                    break;
                }
            }
            if (fresh) p *= suffix_prob;
        }
        if (p > 0.0) {
            entropy -= p * std::log2(p);
            total += p;
        }
    }

    if (std::abs(total - 1.0) > 1e-9)
        throw InvariantError("enumerated history probabilities do not sum to 1");
    return entropy;
}

double testchannel_entropy_lower_bound(unsigned k, unsigned d, unsigned i_blocks) {
    check_enumeration_budget(k, d, i_blocks);
    const double h1 = static_cast<double>(k - d) / k;
    const double h0_minus_h1 = static_cast<double>(d) / (2.0 * k);
    const double fresh_blocks =
        std::min<double>(i_blocks, std::ldexp(1.0, static_cast<int>(k - d)));
    return i_blocks * k * h1 + fresh_blocks * k * h0_minus_h1;
}

} // namespace moducom::refsys
