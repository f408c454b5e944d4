#include "moducom/srccode/lz78.hpp"

namespace moducom::srccode {

Lz78Summary lz78_compress(const SymbolSeq& z) {
    require(!z.empty(), "cannot compress an empty sequence");
    Lz78Coder coder(z.alphabet());
    coder.feed_all(z);
    const double raw_bits = static_cast<double>(z.size()) * z.alphabet().log2q();
    return Lz78Summary{coder.lt_bits(), coder.ls_bits(), coder.completed_phrases(),
                       static_cast<double>(coder.lt_bits()) / raw_bits};
}

} // namespace moducom::srccode
