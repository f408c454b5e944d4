#pragma once

/**
 * @file alphabet.hpp
 * @brief Finite alphabets, symbol sequences, and modulo arithmetic on them.
 *
 * The channel model throughout the library is y_i = (x_i + z_i) mod q with a
 * common finite alphabet {0, .., q-1} for input, output, and noise. Symbols
 * are stored one per byte, so alphabets are limited to q <= 256 (desk-scale
 * experiments only).
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "moducom/core/errors.hpp"

namespace moducom::core {

using Symbol = std::uint8_t;

/// Alphabet {0..q-1}; carries log2(q), the per-symbol information in bits.
class Alphabet {
public:
    explicit Alphabet(unsigned q) : q_(q) {
        require(q >= 2, "alphabet size must be at least 2");
        require(q <= 256, "alphabet size above 256 is not supported (one byte per symbol)");
        log2q_ = std::log2(static_cast<double>(q));
    }

    unsigned q() const noexcept { return q_; }
    double log2q() const noexcept { return log2q_; }

    bool operator==(const Alphabet& other) const noexcept { return q_ == other.q_; }
    bool operator!=(const Alphabet& other) const noexcept { return q_ != other.q_; }

private:
    unsigned q_;
    double log2q_;
};

/// A finite sequence over an alphabet; the carrier of inputs x, outputs y,
/// and noise z. Empty sequences are valid.
class SymbolSeq {
public:
    explicit SymbolSeq(Alphabet alphabet) : alphabet_(alphabet) {}

    SymbolSeq(Alphabet alphabet, std::vector<Symbol> data)
        : alphabet_(alphabet), data_(std::move(data)) {
        for (Symbol s : data_)
            require(s < alphabet_.q(), "symbol " + std::to_string(s) + " outside alphabet of size " +
                                           std::to_string(alphabet_.q()));
    }

    static SymbolSeq zeros(Alphabet alphabet, std::size_t n) {
        return SymbolSeq(alphabet, std::vector<Symbol>(n, 0));
    }

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    Symbol operator[](std::size_t i) const noexcept { return data_[i]; }
    const std::vector<Symbol>& data() const noexcept { return data_; }

    void push_back(Symbol s) {
        require(s < alphabet_.q(), "symbol outside alphabet");
        data_.push_back(s);
    }

    /// First n symbols as a new sequence (n <= size()).
    SymbolSeq prefix(std::size_t n) const {
        require(n <= data_.size(), "prefix longer than sequence");
        return SymbolSeq(alphabet_, std::vector<Symbol>(data_.begin(), data_.begin() + n));
    }

    bool operator==(const SymbolSeq& other) const noexcept {
        return alphabet_ == other.alphabet_ && data_ == other.data_;
    }

private:
    Alphabet alphabet_;
    std::vector<Symbol> data_;
};

/// Elementwise (x_i + z_i) mod q. Lengths and alphabets must agree.
SymbolSeq mod_add(const SymbolSeq& x, const SymbolSeq& z);

/// Elementwise (y_i - x_i) mod q; inverse of mod_add in its second argument.
/// This is the noise-recovery step: a decoder hypothesizing input x forms
/// the hypothetical noise z-hat = y - x.
SymbolSeq mod_sub(const SymbolSeq& y, const SymbolSeq& x);

/// Single-symbol helpers used in hot loops (no validation).
inline Symbol mod_add_sym(Symbol a, Symbol b, unsigned q) noexcept {
    unsigned s = static_cast<unsigned>(a) + b;
    return static_cast<Symbol>(s >= q ? s - q : s);
}

inline Symbol mod_sub_sym(Symbol a, Symbol b, unsigned q) noexcept {
    unsigned s = static_cast<unsigned>(a) + q - b;
    return static_cast<Symbol>(s >= q ? s - q : s);
}

} // namespace moducom::core
