#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stabland/simd/kernels.hpp"

namespace stabland {

using simd::Word;

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for_bits(std::size_t nbits) { return (nbits + kWordBits - 1) / kWordBits; }

/// Packed GF(2) vector of fixed length. Bits past size() are always zero.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t nbits) : nbits_(nbits), words_(words_for_bits(nbits), 0) {}

    static BitVector from_indices(std::size_t nbits, std::span<const std::size_t> indices);

    std::size_t size() const { return nbits_; }
    std::size_t num_words() const { return words_.size(); }
    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

    bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value) {
        Word mask = Word{1} << (i % kWordBits);
        if (value)
            words_[i / kWordBits] |= mask;
        else
            words_[i / kWordBits] &= ~mask;
    }
    void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    std::size_t count() const { return simd::popcount(words_); }
    bool any() const { return simd::any(words_); }
    bool none() const { return !any(); }

    // Parity of the dot product over GF(2).
    bool dot(const BitVector& other) const;

    std::vector<std::size_t> set_bits() const;

    template <typename Fn>
    void for_each_set_bit(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word word = words_[w];
            while (word != 0) {
                fn(w * kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
    }

    // Bits [offset, offset + length) as a new vector.
    BitVector slice(std::size_t offset, std::size_t length) const;
    static BitVector concat(const BitVector& a, const BitVector& b);

    // "0110..." with bit 0 first.
    std::string to_string() const;

    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend auto operator<=>(const BitVector& a, const BitVector& b) {
        if (auto c = a.nbits_ <=> b.nbits_; c != 0) return c;
        return a.words_ <=> b.words_;
    }

    std::size_t hash() const;

private:
    std::size_t nbits_ = 0;
    std::vector<Word> words_;
};

}  // namespace stabland

template <>
struct std::hash<stabland::BitVector> {
    std::size_t operator()(const stabland::BitVector& v) const noexcept { return v.hash(); }
};
