#include "moducom/refsys/collapsed.hpp"

#include <cmath>

#include "moducom/core/errors.hpp"

namespace moducom::refsys {

double CollapsedDist::entropy_bits() const {
    double h = 0.0;
    const double denom = static_cast<double>(b);
    for (const auto& [block, count] : counts) {
        const double p = static_cast<double>(count) / denom;
        h -= p * std::log2(p);
    }
    return h;
}

CollapsedDist collapsed_distribution(const SymbolSeq& z, unsigned k, std::size_t b) {
    require(k >= 1, "block length must be at least 1");
    require(b >= 1, "block count must be at least 1");
    require(b * static_cast<std::size_t>(k) <= z.size(),
            "collapsed statistics need b complete k-blocks of noise");

    CollapsedDist dist;
    dist.k = k;
    dist.b = b;
    std::vector<Symbol> block(k);
    for (std::size_t i = 0; i < b; ++i) {
        for (unsigned t = 0; t < k; ++t) block[t] = z[i * k + t];
        ++dist.counts[block];
    }
    return dist;
}

double collapsed_entropy(const SymbolSeq& z, unsigned k, std::size_t b) {
    return collapsed_distribution(z, k, b).entropy_bits();
}

} // namespace moducom::refsys
