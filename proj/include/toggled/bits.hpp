#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toggled {

/// Fixed-length bit vector packed into 64-bit words. Index 0 lives in the
/// least significant bit of word 0; bits past size() are always zero.
///
/// The Tag parameter keeps configurations, press-sets and raw matrix rows
/// apart at compile time. Use bits_cast to move between them deliberately.
template <class Tag>
class Bits {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Bits() = default;
    explicit Bits(std::size_t n) : size_(n), words_(word_count(n), 0) {}

    static Bits ones(std::size_t n) {
        Bits b(n);
        std::fill(b.words_.begin(), b.words_.end(), ~word_type{0});
        b.trim();
        return b;
    }

    /// Parses a string over {0,1}; character 0 is index 0.
    static Bits from_string(std::string_view s) {
        Bits b(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                b.set(i);
            } else if (s[i] != '0') {
                throw std::invalid_argument("bit string may only contain '0' and '1', got '" +
                                            std::string(1, s[i]) + "' at position " +
                                            std::to_string(i));
            }
        }
        return b;
    }

    static Bits from_indices(std::size_t n, const std::vector<std::size_t>& idx) {
        Bits b(n);
        for (auto i : idx) {
            b.check_index(i);
            b.set(i);
        }
        return b;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool test(std::size_t i) const noexcept { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }
    bool operator[](std::size_t i) const noexcept { return test(i); }
    void set(std::size_t i) noexcept { words_[i / word_bits] |= word_type{1} << (i % word_bits); }
    void reset(std::size_t i) noexcept { words_[i / word_bits] &= ~(word_type{1} << (i % word_bits)); }
    void flip(std::size_t i) noexcept { words_[i / word_bits] ^= word_type{1} << (i % word_bits); }
    void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }

    void check_index(std::size_t i) const {
        if (i >= size_) {
            throw std::out_of_range("vertex index " + std::to_string(i) + " out of range [0, " +
                                    std::to_string(size_) + ")");
        }
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const noexcept {
        return std::any_of(words_.begin(), words_.end(), [](word_type w) { return w != 0; });
    }
    bool none() const noexcept { return !any(); }
    bool all() const noexcept { return *this == ones(size_); }

    /// Index of the lowest set bit at or after `from`, or size() if none.
    std::size_t find_next(std::size_t from) const noexcept {
        if (from >= size_) return size_;
        std::size_t w = from / word_bits;
        word_type cur = words_[w] & (~word_type{0} << (from % word_bits));
        while (true) {
            if (cur != 0) return w * word_bits + static_cast<std::size_t>(std::countr_zero(cur));
            if (++w == words_.size()) return size_;
            cur = words_[w];
        }
    }
    std::size_t find_first() const noexcept { return find_next(0); }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (auto i = find_first(); i < size_; i = find_next(i + 1)) out.push_back(i);
        return out;
    }

    Bits& operator^=(const Bits& o) {
        require_same_size(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
        return *this;
    }
    Bits& operator&=(const Bits& o) {
        require_same_size(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        require_same_size(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

    Bits operator~() const {
        Bits r = *this;
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    /// Parity of |this ∩ o|.
    bool dot(const Bits& o) const {
        require_same_size(o);
        word_type acc = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & o.words_[k];
        return std::popcount(acc) & 1;
    }

    friend bool operator==(const Bits&, const Bits&) = default;

    /// Order on the printed bit string ("0..." < "1..."), index 0 most significant.
    friend bool lex_less(const Bits& a, const Bits& b) {
        a.require_same_size(b);
        for (std::size_t k = 0; k < a.words_.size(); ++k) {
            word_type diff = a.words_[k] ^ b.words_[k];
            if (diff != 0) {
                word_type low = diff & (~diff + 1);
                return (a.words_[k] & low) == 0;
            }
        }
        return false;
    }

    /// Order on sorted index lists: at the lowest index where the two differ,
    /// the vector containing that index comes first. {0} precedes {3}.
    friend bool index_lex_less(const Bits& a, const Bits& b) {
        a.require_same_size(b);
        for (std::size_t k = 0; k < a.words_.size(); ++k) {
            word_type diff = a.words_[k] ^ b.words_[k];
            if (diff != 0) {
                word_type low = diff & (~diff + 1);
                return (a.words_[k] & low) != 0;
            }
        }
        return false;
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (test(i)) s[i] = '1';
        return s;
    }

    /// "{0,3}" style listing of the set bits.
    std::string to_set_string() const {
        std::string s = "{";
        bool first = true;
        for (auto i : indices()) {
            if (!first) s += ',';
            s += std::to_string(i);
            first = false;
        }
        return s + "}";
    }

    const std::vector<word_type>& words() const noexcept { return words_; }
    word_type* data() noexcept { return words_.data(); }
    const word_type* data() const noexcept { return words_.data(); }

    void require_same_size(const Bits& o) const {
        if (o.size_ != size_) {
            throw std::invalid_argument("length mismatch: " + std::to_string(size_) + " vs " +
                                        std::to_string(o.size_));
        }
    }

private:
    static std::size_t word_count(std::size_t n) { return (n + word_bits - 1) / word_bits; }

    void trim() noexcept {
        if (size_ % word_bits != 0 && !words_.empty())
            words_.back() &= (word_type{1} << (size_ % word_bits)) - 1;
    }

    template <class>
    friend class Bits;

    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

struct RawTag {};
struct ConfigurationTag {};
struct PressSetTag {};

using BitVector = Bits<RawTag>;
/// One on/off bit per vertex. Also used for toggle deltas.
using Configuration = Bits<ConfigurationTag>;
/// Vertices pressed an odd number of times.
using PressSet = Bits<PressSetTag>;

template <class To, class FromTag>
To bits_cast(const Bits<FromTag>& from) {
    To to(from.size());
    std::copy(from.words().begin(), from.words().end(), to.data());
    return to;
}

}  // namespace toggled
