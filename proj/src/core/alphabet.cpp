#include "moducom/core/alphabet.hpp"

namespace moducom::core {

namespace {

void check_compatible(const SymbolSeq& a, const SymbolSeq& b) {
    require(a.alphabet() == b.alphabet(), "alphabet mismatch between sequences");
    require(a.size() == b.size(), "length mismatch between sequences");
}

} // namespace

SymbolSeq mod_add(const SymbolSeq& x, const SymbolSeq& z) {
    check_compatible(x, z);
    const unsigned q = x.alphabet().q();
    std::vector<Symbol> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = mod_add_sym(x[i], z[i], q);
    return SymbolSeq(x.alphabet(), std::move(out));
}

SymbolSeq mod_sub(const SymbolSeq& y, const SymbolSeq& x) {
    check_compatible(y, x);
    const unsigned q = y.alphabet().q();
    std::vector<Symbol> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = mod_sub_sym(y[i], x[i], q);
    return SymbolSeq(y.alphabet(), std::move(out));
}

} // namespace moducom::core
