#include "moducom/refsys/iterated.hpp"

#include <vector>

#include "moducom/core/errors.hpp"
#include "moducom/core/rng.hpp"

namespace moducom::refsys {

using core::mod_add_sym;
using core::prf64;

namespace {

void check_eval_inputs(const BlockCode& code, const SymbolSeq& z, std::size_t b) {
    code.validate();
    require(code.alphabet == z.alphabet(), "code and noise alphabets must match");
    require(b >= 1, "block count must be at least 1");
    require(b * static_cast<std::size_t>(code.k) <= z.size(),
            "evaluation needs b complete k-blocks of noise");
}

} // namespace

double iterated_mapping_eval(const BlockCode& code, const SymbolSeq& z, std::size_t b,
                             std::uint64_t trials, std::uint64_t seed) {
    check_eval_inputs(code, z, b);
    require(trials >= 1, "trial count must be at least 1");

    const unsigned q = code.alphabet.q();
    const unsigned k = code.k;
    const std::uint64_t key = prf64(seed ^ core::domain::eval, 0);
    std::vector<Symbol> received(k);
    std::uint64_t errors = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        for (std::size_t block = 0; block < b; ++block) {
            const std::uint64_t m = prf64(key, trial, block) % code.message_count;
            const Symbol* codeword = code.encode(m);
            for (unsigned t = 0; t < k; ++t)
                received[t] = mod_add_sym(codeword[t], z[block * k + t], q);
            errors += code.decode(received.data()) != m;
        }
    }
    return static_cast<double>(errors) / (static_cast<double>(trials) * static_cast<double>(b));
}

double iterated_mapping_error_exact(const BlockCode& code, const SymbolSeq& z, std::size_t b) {
    check_eval_inputs(code, z, b);

    const unsigned q = code.alphabet.q();
    const unsigned k = code.k;
    std::vector<Symbol> received(k);
    double error_sum = 0.0;
    for (std::size_t block = 0; block < b; ++block) {
        std::uint64_t wrong = 0;
        for (std::uint64_t m = 0; m < code.message_count; ++m) {
            const Symbol* codeword = code.encode(m);
            for (unsigned t = 0; t < k; ++t)
                received[t] = mod_add_sym(codeword[t], z[block * k + t], q);
            wrong += code.decode(received.data()) != m;
        }
        error_sum += static_cast<double>(wrong) / static_cast<double>(code.message_count);
    }
    return error_sum / static_cast<double>(b);
}

} // namespace moducom::refsys
