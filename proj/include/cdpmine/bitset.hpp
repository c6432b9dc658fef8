#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cdpmine {

// Fixed-width dynamic bitset used for transaction covers and item masks.
class Bitset {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    Bitset() = default;
    explicit Bitset(std::size_t n_bits) : n_bits_(n_bits), words_((n_bits + kWordBits - 1) / kWordBits, 0) {}

    static Bitset full(std::size_t n_bits) {
        Bitset b(n_bits);
        for (auto& w : b.words_) w = ~Word{0};
        b.trim();
        return b;
    }

    std::size_t size() const { return n_bits_; }

    void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
    void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
    bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }

    std::size_t count() const {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    // |*this & other| without materialising the intersection.
    std::size_t intersect_count(const Bitset& other) const {
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) c += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
        return c;
    }

    Bitset& operator&=(const Bitset& other) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    bool is_subset_of(const Bitset& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~other.words_[k]) return false;
        return true;
    }

    bool none() const {
        for (Word w : words_)
            if (w) return false;
        return true;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            Word w = words_[k];
            while (w) {
                f(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    void trim() {
        if (n_bits_ % kWordBits != 0 && !words_.empty()) words_.back() &= (Word{1} << (n_bits_ % kWordBits)) - 1;
    }

    std::size_t n_bits_ = 0;
    std::vector<Word> words_;
};

}  // namespace cdpmine
