#include "stabland/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabland {

BitVector BitVector::from_indices(std::size_t nbits, std::span<const std::size_t> indices) {
    BitVector out(nbits);
    for (std::size_t i : indices) {
        if (i >= nbits) throw std::out_of_range("BitVector::from_indices: index out of range");
        out.flip(i);
    }
    return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.nbits_ != nbits_) throw std::invalid_argument("BitVector: length mismatch");
    simd::xor_into(words_, other.words_);
    return *this;
}

bool BitVector::dot(const BitVector& other) const {
    if (other.nbits_ != nbits_) throw std::invalid_argument("BitVector: length mismatch");
    return simd::and_parity(words_, other.words_);
}

std::vector<std::size_t> BitVector::set_bits() const {
    std::vector<std::size_t> out;
    for_each_set_bit([&](std::size_t i) { out.push_back(i); });
    return out;
}

BitVector BitVector::slice(std::size_t offset, std::size_t length) const {
    if (offset + length > nbits_) throw std::out_of_range("BitVector::slice");
    BitVector out(length);
    const std::size_t shift = offset % kWordBits;
    const std::size_t base = offset / kWordBits;
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        Word lo = words_[base + w] >> shift;
        Word hi = 0;
        if (shift != 0 && base + w + 1 < words_.size()) hi = words_[base + w + 1] << (kWordBits - shift);
        out.words_[w] = lo | hi;
    }
    if (std::size_t tail = length % kWordBits; tail != 0) out.words_.back() &= (Word{1} << tail) - 1;
    return out;
}

BitVector BitVector::concat(const BitVector& a, const BitVector& b) {
    BitVector out(a.nbits_ + b.nbits_);
    std::copy(a.words_.begin(), a.words_.end(), out.words_.begin());
    const std::size_t shift = a.nbits_ % kWordBits;
    const std::size_t base = a.nbits_ / kWordBits;
    for (std::size_t w = 0; w < b.words_.size(); ++w) {
        out.words_[base + w] |= b.words_[w] << shift;
        if (shift != 0 && base + w + 1 < out.words_.size())
            out.words_[base + w + 1] |= b.words_[w] >> (kWordBits - shift);
    }
    return out;
}

std::string BitVector::to_string() const {
    std::string out(nbits_, '0');
    for_each_set_bit([&](std::size_t i) { out[i] = '1'; });
    return out;
}

std::size_t BitVector::hash() const {
    // FNV-1a over words; stable across runs and platforms.
    std::uint64_t h = 1469598103934665603ULL ^ nbits_;
    for (Word w : words_) {
        h ^= w;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

}  // namespace stabland
