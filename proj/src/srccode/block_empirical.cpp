#include "moducom/srccode/block_empirical.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace moducom::srccode {

BlockEmpiricalSummary block_empirical_compress(const SymbolSeq& z, unsigned k) {
    require(k >= 1, "block length must be at least 1");
    require(z.size() >= k, "sequence shorter than one block");

    const std::size_t b = z.size() / k;
    std::map<std::vector<Symbol>, std::uint64_t> freq;
    for (std::size_t blk = 0; blk < b; ++blk) {
        std::vector<Symbol> key(k);
        for (unsigned t = 0; t < k; ++t) key[t] = z[blk * k + t];
        ++freq[key];
    }

    BlockEmpiricalSummary out{0, b, freq.size(), 0.0, 0.0};
    for (const auto& [value, c] : freq) {
        const double p = static_cast<double>(c) / static_cast<double>(b);
        // ceil(log2(b/c)) computed exactly: 2^e >= b/c iff 2^e >= ceil(b/c).
        const std::uint64_t len = ceil_log2_u64((b + c - 1) / c) + 1;
        out.bits += len * c;
        out.empirical_entropy -= p * std::log2(p);
        out.kraft_sum += std::exp2(-static_cast<double>(len));
    }
    return out;
}

} // namespace moducom::srccode
