#include "moducom/refsys/prefix_suffix.hpp"

#include "moducom/core/errors.hpp"

namespace moducom::refsys {

using core::mod_sub_sym;

BlockCode PrefixSuffixCode::as_block_code() const {
    const unsigned q = alphabet.q();
    const unsigned prefix_len = k - d;

    BlockCode code;
    code.alphabet = alphabet;
    code.k = k;
    code.message_count = 1;
    for (unsigned t = 0; t < d; ++t) code.message_count *= q;
    code.table.assign(code.message_count * static_cast<std::size_t>(k), 0);
    for (std::uint64_t m = 0; m < code.message_count; ++m)
        to_digits(m, d, q, code.table.data() + m * k + prefix_len);

    code.decode = [registry = registry, q, d = d, prefix_len](const Symbol* y) -> std::uint64_t {
        // The transmitted prefix is constant 0, so the received prefix is the
        // noise prefix verbatim; it selects the suffix noise to subtract.
        const std::vector<Symbol> prefix(y, y + prefix_len);
        const auto it = registry.find(prefix);
        if (it == registry.end()) return 0;
        std::uint64_t m = 0;
        for (unsigned t = 0; t < d; ++t)
            m = m * q + mod_sub_sym(y[prefix_len + t], it->second[t], q);
        return m;
    };
    return code;
}

PrefixSuffixCode prefix_suffix_build(unsigned k, unsigned d, const SymbolSeq& z) {
    require(d >= 1 && d < k, "suffix length must satisfy 1 <= d < k");
    const std::size_t blocks = z.size() / k;
    require(blocks >= 1, "registry construction needs at least one complete block");

    PrefixSuffixCode code;
    code.alphabet = z.alphabet();
    code.k = k;
    code.d = d;
    const unsigned prefix_len = k - d;
    std::vector<Symbol> prefix(prefix_len), suffix(d);
    for (std::size_t block = 0; block < blocks; ++block) {
        for (unsigned t = 0; t < prefix_len; ++t) prefix[t] = z[block * k + t];
        for (unsigned t = 0; t < d; ++t) suffix[t] = z[block * k + prefix_len + t];
        const auto [it, fresh] = code.registry.emplace(prefix, suffix);
        require(fresh || it->second == suffix,
                "noise sequence violates the unique-prefix property at block " +
                    std::to_string(block));
    }
    return code;
}

} // namespace moducom::refsys
