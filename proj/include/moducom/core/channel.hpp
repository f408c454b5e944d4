#pragma once

/**
 * @file channel.hpp
 * @brief The modulo-additive channel as a consumable session.
 *
 * A ChannelSession holds a fixed noise sequence and applies it causally:
 * the i-th transmitted symbol is combined with the i-th noise symbol and the
 * cursor advances. Output at position i depends only on inputs 1..i, which is
 * what makes per-symbol feedback meaningful.
 */

#include <cstddef>

#include "moducom/core/alphabet.hpp"

namespace moducom::core {

class ChannelSession {
public:
    explicit ChannelSession(SymbolSeq noise) : noise_(std::move(noise)) {}

    const Alphabet& alphabet() const noexcept { return noise_.alphabet(); }
    std::size_t length() const noexcept { return noise_.size(); }
    std::size_t cursor() const noexcept { return cursor_; }
    std::size_t remaining() const noexcept { return noise_.size() - cursor_; }

    /// Transmit one symbol: returns (x + z_cursor) mod q and advances.
    Symbol transmit(Symbol x) {
        require(cursor_ < noise_.size(), "channel session exhausted");
        require(x < alphabet().q(), "input symbol outside alphabet");
        Symbol y = mod_add_sym(x, noise_[cursor_], alphabet().q());
        ++cursor_;
        return y;
    }

    /// Transmit a block of symbols starting at the current cursor.
    SymbolSeq transmit(const SymbolSeq& x) {
        require(x.alphabet() == alphabet(), "alphabet mismatch");
        SymbolSeq y(alphabet());
        for (std::size_t i = 0; i < x.size(); ++i) y.push_back(transmit(x[i]));
        return y;
    }

private:
    SymbolSeq noise_;
    std::size_t cursor_ = 0;
};

} // namespace moducom::core
