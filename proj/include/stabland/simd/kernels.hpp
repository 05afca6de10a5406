#pragma once

// Word-level GF(2) kernels. Every bit-vector operation in the library funnels
// through one of these entry points; the active table is chosen once at
// startup from the CPU's feature set.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stabland::simd {

using Word = std::uint64_t;

struct KernelTable {
    const char* name;
    void (*xor_into)(Word* dst, const Word* src, std::size_t n);
    std::size_t (*popcount)(const Word* a, std::size_t n);
    // popcount(a | b): the weight of a Pauli from its X and Z parts.
    std::size_t (*or_popcount)(const Word* a, const Word* b, std::size_t n);
    // Parity of popcount(a & b).
    bool (*and_parity)(const Word* a, const Word* b, std::size_t n);
    // Parity of popcount((ax & bz) ^ (az & bx)).
    bool (*symplectic_parity)(const Word* ax, const Word* az, const Word* bx, const Word* bz,
                              std::size_t n);
    bool (*any)(const Word* a, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// All variants usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

// The table used by the library. STABLAND_SIMD=scalar forces the reference path.
const KernelTable& active();

inline void xor_into(std::span<Word> dst, std::span<const Word> src) {
    active().xor_into(dst.data(), src.data(), dst.size());
}

inline std::size_t popcount(std::span<const Word> a) {
    return active().popcount(a.data(), a.size());
}

inline std::size_t or_popcount(std::span<const Word> a, std::span<const Word> b) {
    return active().or_popcount(a.data(), b.data(), a.size());
}

inline bool and_parity(std::span<const Word> a, std::span<const Word> b) {
    return active().and_parity(a.data(), b.data(), a.size());
}

inline bool symplectic_parity(std::span<const Word> ax, std::span<const Word> az,
                              std::span<const Word> bx, std::span<const Word> bz) {
    return active().symplectic_parity(ax.data(), az.data(), bx.data(), bz.data(), ax.size());
}

inline bool any(std::span<const Word> a) { return active().any(a.data(), a.size()); }

}  // namespace stabland::simd
