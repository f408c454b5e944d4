#include "moducom/refsys/block_code.hpp"

#include <algorithm>
#include <cmath>

#include "moducom/core/errors.hpp"

namespace moducom::refsys {

void BlockCode::validate() const {
    require(k >= 1, "block length must be at least 1");
    require(message_count >= 1, "message count must be at least 1");
    require(table.size() == message_count * static_cast<std::size_t>(k),
            "encoder table must hold message_count rows of k symbols");
    for (Symbol s : table)
        require(s < alphabet.q(), "encoder table symbol outside the alphabet");
    require(static_cast<bool>(decode), "decoder function must be set");

    std::vector<std::vector<Symbol>> rows;
    rows.reserve(message_count);
    for (std::uint64_t m = 0; m < message_count; ++m)
        rows.emplace_back(table.begin() + static_cast<std::ptrdiff_t>(m * k),
                          table.begin() + static_cast<std::ptrdiff_t>((m + 1) * k));
    std::sort(rows.begin(), rows.end());
    require(std::adjacent_find(rows.begin(), rows.end()) == rows.end(),
            "encoder table must be injective (two messages share a codeword)");
}

void to_digits(std::uint64_t m, unsigned k, unsigned q, Symbol* out) {
    for (unsigned t = k; t-- > 0;) {
        out[t] = static_cast<Symbol>(m % q);
        m /= q;
    }
}

std::uint64_t from_digits(const Symbol* digits, unsigned k, unsigned q) {
    std::uint64_t m = 0;
    for (unsigned t = 0; t < k; ++t) m = m * q + digits[t];
    return m;
}

BlockCode uniform_enumeration_code(const Alphabet& alphabet, unsigned k) {
    require(k >= 1, "block length must be at least 1");
    const unsigned q = alphabet.q();
    std::uint64_t message_count = 1;
    for (unsigned t = 0; t < k; ++t) {
        require(message_count <= (std::uint64_t{1} << 62) / q,
                "q^k exceeds the supported message-count range");
        message_count *= q;
    }

    BlockCode code;
    code.alphabet = alphabet;
    code.k = k;
    code.message_count = message_count;
    code.table.resize(message_count * static_cast<std::size_t>(k));
    for (std::uint64_t m = 0; m < message_count; ++m)
        to_digits(m, k, q, code.table.data() + m * k);
    code.decode = [k, q](const Symbol* y) { return from_digits(y, k, q); };
    return code;
}

} // namespace moducom::refsys
