#pragma once

/**
 * @file lz78.hpp
 * @brief LZ78 incremental parsing with exact integer bit accounting, plus a
 *        copy-on-write overlay for cheap per-hypothesis decoding state.
 *
 * The coder parses its input into phrases, each a previously seen phrase
 * extended by one symbol, and charges per completed phrase
 *     ceil(log2(c+1)) + ceil(log2 q)   bits
 * (c = phrases completed before this one): an index into the phrase
 * dictionary plus the new symbol. That sum is the unterminated length L_S.
 * The terminated length flushes the pending (uncompleted) phrase as
 *     L_T = L_S + ceil(log2(c+1)) + gamma(i+1),
 * a reference to the pending dictionary node plus the Elias-gamma code of the
 * fed-symbol count, which makes the terminated codeword self-delimiting.
 * All quantities are exact integers, so decoding thresholds and rate floors
 * computed from them hold with zero tolerance.
 */

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "moducom/srccode/coder.hpp"

namespace moducom::srccode {

/// Phrase dictionary: root plus one node per completed phrase. Child links
/// are a flat per-node array for small alphabets and a hash map otherwise.
class Lz78Trie {
public:
    explicit Lz78Trie(const Alphabet& alphabet)
        : q_(alphabet.q()), flat_(alphabet.q() <= kFlatLimit) {
        if (flat_) kids_.assign(q_, -1);
    }

    std::int32_t child(std::int32_t node, Symbol s) const noexcept {
        if (flat_) return kids_[static_cast<std::size_t>(node) * q_ + s];
        auto it = map_.find(key(node, s));
        return it == map_.end() ? -1 : it->second;
    }

    std::int32_t add_child(std::int32_t node, Symbol s) {
        const std::int32_t id = nodes_++;
        if (flat_) {
            kids_.resize(kids_.size() + q_, -1);
            kids_[static_cast<std::size_t>(node) * q_ + s] = id;
        } else {
            map_.emplace(key(node, s), id);
        }
        return id;
    }

    std::int32_t node_count() const noexcept { return nodes_; }

private:
    static constexpr unsigned kFlatLimit = 16;

    static std::uint64_t key(std::int32_t node, Symbol s) noexcept {
        return (static_cast<std::uint64_t>(node) << 8) | s;
    }

    unsigned q_;
    bool flat_;
    std::vector<std::int32_t> kids_;
    std::unordered_map<std::uint64_t, std::int32_t> map_;
    std::int32_t nodes_ = 1;
};

/// The LZ78 sequential coder (see file comment for the accounting).
class Lz78Coder final : public SequentialCoder {
public:
    explicit Lz78Coder(const Alphabet& alphabet)
        : alphabet_(alphabet), sym_bits_(ceil_log2_u64(alphabet.q())), trie_(alphabet) {}

    const Alphabet& alphabet() const noexcept override { return alphabet_; }
    std::size_t fed() const noexcept override { return fed_; }

    void feed(Symbol s) override {
        const std::int32_t next = trie_.child(node_, s);
        if (next >= 0) {
            node_ = next;
        } else {
            ls_ += ceil_log2_u64(completed_ + 1) + sym_bits_;
            trie_.add_child(node_, s);
            ++completed_;
            node_ = 0;
        }
        ++fed_;
    }

    /// Exact integer lengths.
    std::uint64_t ls_bits() const noexcept { return ls_; }
    std::uint64_t lt_bits() const noexcept {
        return ls_ + ceil_log2_u64(completed_ + 1) + elias_gamma_length(fed_ + 1);
    }

    double unterminated_bits() const override { return static_cast<double>(ls_); }
    double terminated_bits() const override { return static_cast<double>(lt_bits()); }
    bool integer_lengths() const noexcept override { return true; }

    /// Worst-case flush size for prefixes up to length n: the pending-node
    /// reference plus the gamma field, both maximized at i = n.
    static std::uint64_t max_gap_bits(std::size_t n) noexcept {
        return ceil_log2_u64(n + 1) + elias_gamma_length(n + 1);
    }
    double max_length_gap(std::size_t n) const override {
        return static_cast<double>(max_gap_bits(n));
    }

    std::unique_ptr<SequentialCoder> clone() const override {
        return std::make_unique<Lz78Coder>(*this);
    }

    std::uint64_t completed_phrases() const noexcept { return completed_; }
    const Lz78Trie& trie() const noexcept { return trie_; }
    std::int32_t pending_node() const noexcept { return node_; }

private:
    Alphabet alphabet_;
    unsigned sym_bits_;
    Lz78Trie trie_;
    std::int32_t node_ = 0;
    std::uint64_t completed_ = 0;
    std::uint64_t ls_ = 0;
    std::size_t fed_ = 0;

    friend class Lz78Overlay;
};

/**
 * A hypothesis state layered over a frozen Lz78Coder snapshot. The base trie
 * is shared read-only; phrases the overlay completes go into a small private
 * arena. rebind() resets the overlay to a (possibly different) base in O(own
 * size), retaining allocated capacity, so one overlay object can serve one
 * decoding hypothesis across many blocks without reallocation.
 *
 * The base must not be fed while any overlay is bound to it.
 */
class Lz78Overlay {
public:
    explicit Lz78Overlay(const Alphabet& alphabet)
        : q_(alphabet.q()), sym_bits_(ceil_log2_u64(alphabet.q())) {}

    void rebind(const Lz78Coder& base) {
        base_ = &base;
        node_ = base.node_;
        completed_ = base.completed_;
        ls_ = base.ls_;
        fed_ = base.fed_;
        priv_kids_.clear();
        links_.clear();
    }

    void feed(Symbol s) {
        bool found = false;
        std::int32_t dest = 0;
        if (node_ >= 0) {
            const std::int32_t in_base = base_->trie_.child(node_, s);
            if (in_base >= 0) {
                found = true;
                dest = in_base;
            } else {
                const std::uint64_t k = link_key(node_, s);
                for (const auto& link : links_)
                    if (link.first == k) {
                        found = true;
                        dest = ~link.second;
                        break;
                    }
            }
        } else {
            const std::int32_t p = priv_kids_[static_cast<std::size_t>(~node_) * q_ + s];
            if (p >= 0) {
                found = true;
                dest = ~p;
            }
        }
        if (found) {
            node_ = dest;
        } else {
            ls_ += ceil_log2_u64(completed_ + 1) + sym_bits_;
            const auto pid = static_cast<std::int32_t>(priv_kids_.size() / q_);
            priv_kids_.resize(priv_kids_.size() + q_, -1);
            if (node_ >= 0)
                links_.emplace_back(link_key(node_, s), pid);
            else
                priv_kids_[static_cast<std::size_t>(~node_) * q_ + s] = pid;
            ++completed_;
            node_ = 0;
        }
        ++fed_;
    }

    std::size_t fed() const noexcept { return fed_; }
    std::uint64_t ls_bits() const noexcept { return ls_; }
    std::uint64_t lt_bits() const noexcept {
        return ls_ + ceil_log2_u64(completed_ + 1) + elias_gamma_length(fed_ + 1);
    }

    /// L_S plus the pending-node reference width: the part of L_T that varies
    /// per hypothesis. The gamma field depends only on the fed count, which
    /// is uniform across hypotheses, so the decoder folds it into thresholds.
    std::uint64_t ls_plus_ref_bits() const noexcept {
        return ls_ + ceil_log2_u64(completed_ + 1);
    }

private:
    std::uint64_t link_key(std::int32_t base_node, Symbol s) const noexcept {
        return (static_cast<std::uint64_t>(base_node) << 8) | s;
    }

    unsigned q_;
    unsigned sym_bits_;
    const Lz78Coder* base_ = nullptr;
    std::int32_t node_ = 0; ///< >= 0: base trie node; < 0: private node ~id
    std::uint64_t completed_ = 0;
    std::uint64_t ls_ = 0;
    std::size_t fed_ = 0;
    std::vector<std::int32_t> priv_kids_; ///< private node children, id*q + s
    std::vector<std::pair<std::uint64_t, std::int32_t>> links_; ///< base edge -> private node
};

/// Whole-sequence compression summary.
struct Lz78Summary {
    std::uint64_t lt_bits;    ///< terminated length of the full sequence
    std::uint64_t ls_bits;    ///< unterminated length
    std::uint64_t phrases;    ///< completed phrase count
    double compression_ratio; ///< lt_bits / (n * log2 q); may exceed 1 for short inputs
};

/// Feed a whole sequence and report lengths and the compression ratio.
Lz78Summary lz78_compress(const SymbolSeq& z);

} // namespace moducom::srccode
