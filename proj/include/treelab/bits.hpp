#pragma once
/// \file bits.hpp
/// Finite binary sequences: the nodes of the infinite binary tree.
///
/// A node is a finite string over {0,1}; the empty string is the root.
/// Position 0 is the first (root-most) bit.  Nodes compare in the canonical
/// display order: shorter before longer, ties broken pointwise with 0 < 1.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace treelab {

/// A finite binary sequence.  Bit i of the sequence is stored at bit (i % 64)
/// of word (i / 64); unused high bits of the last word are kept zero so that
/// equality is plain member equality.
class Bits {
public:
    Bits() = default;

    /// Parse from text: a string of '0'/'1' characters.  "-" (and the empty
    /// string) denote the root.
    static Bits from_string(std::string_view text) {
        Bits b;
        if (text == "-") return b;
        for (char c : text) {
            if (c == '0') b.push_back(false);
            else if (c == '1') b.push_back(true);
            else throw input_error("invalid bit character '" + std::string(1, c) +
                                   "' in node \"" + std::string(text) + "\"");
        }
        return b;
    }

    std::size_t size() const noexcept { return len_; }
    bool empty() const noexcept { return len_ == 0; }

    /// Value of position i.  Precondition: i < size().
    bool bit(std::size_t i) const {
        if (i >= len_) throw input_error("bit index out of range");
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    /// Value of the final position.  Precondition: nonempty.
    bool back() const { return bit(len_ - 1); }

    void push_back(bool b) {
        if ((len_ & 63) == 0) words_.push_back(0);
        if (b) words_[len_ >> 6] |= std::uint64_t{1} << (len_ & 63);
        ++len_;
    }

    void pop_back() {
        if (len_ == 0) throw input_error("pop_back on the root");
        --len_;
        words_[len_ >> 6] &= ~(std::uint64_t{1} << (len_ & 63));
        if ((len_ & 63) == 0) words_.pop_back();
    }

    /// Copy of this node with one extra bit appended.
    Bits extended(bool b) const {
        Bits r = *this;
        r.push_back(b);
        return r;
    }

    /// Initial segment of length n.  Precondition: n <= size().
    Bits prefix(std::size_t n) const {
        if (n > len_) throw input_error("prefix length exceeds node length");
        Bits r;
        r.len_ = n;
        const std::size_t nwords = (n + 63) >> 6;
        r.words_.assign(words_.begin(), words_.begin() + nwords);
        if (n & 63) r.words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
        return r;
    }

    /// Initial-segment test; a node is an initial segment of itself.
    bool is_prefix_of(const Bits& other) const {
        return len_ <= other.len_ && common_prefix_len(*this, other) == len_;
    }

    /// Length of the longest common initial segment.
    friend std::size_t common_prefix_len(const Bits& a, const Bits& b) {
        const std::size_t n = a.len_ < b.len_ ? a.len_ : b.len_;
        const std::size_t nwords = (n + 63) >> 6;
        for (std::size_t w = 0; w < nwords; ++w) {
            const std::uint64_t x = a.words_[w] ^ b.words_[w];
            if (x != 0) {
                const std::size_t d = (w << 6) + std::countr_zero(x);
                return d < n ? d : n;
            }
        }
        return n;
    }

    /// Longest common initial segment (the meet in the tree order).
    friend Bits meet(const Bits& a, const Bits& b) {
        return a.prefix(common_prefix_len(a, b));
    }

    friend bool operator==(const Bits& a, const Bits& b) noexcept {
        return a.len_ == b.len_ && a.words_ == b.words_;
    }
    friend bool operator!=(const Bits& a, const Bits& b) noexcept { return !(a == b); }

    /// Canonical display order: by length, then pointwise with 0 before 1.
    friend bool operator<(const Bits& a, const Bits& b) {
        if (a.len_ != b.len_) return a.len_ < b.len_;
        const std::size_t d = common_prefix_len(a, b);
        if (d == a.len_) return false; // equal
        return !a.bit(d);
    }
    friend bool operator>(const Bits& a, const Bits& b) { return b < a; }
    friend bool operator<=(const Bits& a, const Bits& b) { return !(b < a); }
    friend bool operator>=(const Bits& a, const Bits& b) { return !(a < b); }

    /// Render as text; the root renders as "-".
    std::string str() const {
        if (len_ == 0) return "-";
        std::string s(len_, '0');
        for (std::size_t i = 0; i < len_; ++i)
            if (bit(i)) s[i] = '1';
        return s;
    }

    /// Hash suitable for unordered containers (never used for output order).
    std::size_t hash() const noexcept {
        std::uint64_t h = 1469598103934665603ull ^ len_;
        for (std::uint64_t w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept { return b.hash(); }
};

/// Neither node is an initial segment of the other.
inline bool incomparable(const Bits& a, const Bits& b) {
    const std::size_t d = common_prefix_len(a, b);
    return d < a.size() && d < b.size();
}

/// Left-to-right order of two incomparable nodes: true when a branches off
/// with bit 0 where b carries bit 1.  Precondition: incomparable(a, b).
inline bool lex_left_of(const Bits& a, const Bits& b) {
    const std::size_t d = common_prefix_len(a, b);
    if (d >= a.size() || d >= b.size())
        throw input_error("lex_left_of requires incomparable nodes");
    return !a.bit(d);
}

/// Comma-separated rendering of a node list (each node as Bits::str()).
inline std::string join_nodes(const std::vector<Bits>& nodes) {
    std::string out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) out += ',';
        out += nodes[i].str();
    }
    return out;
}

} // namespace treelab
