// AArch64 variant. NEON is part of the base ISA there, so no runtime probe.

#include <bit>

#include "stabland/simd/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace stabland::simd {
namespace {

constexpr std::size_t kLanes = 2;

inline uint64x2_t load(const Word* p) { return vld1q_u64(p); }

inline std::size_t lane_popcount(uint64x2_t v) {
    return static_cast<std::size_t>(vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v))));
}

inline Word fold_xor(uint64x2_t v) { return vgetq_lane_u64(v, 0) ^ vgetq_lane_u64(v, 1); }

void xor_into_neon(Word* dst, const Word* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) vst1q_u64(dst + i, veorq_u64(load(dst + i), load(src + i)));
    for (; i < n; ++i) dst[i] ^= src[i];
}

std::size_t popcount_neon(const Word* a, std::size_t n) {
    std::size_t total = 0, i = 0;
    for (; i + kLanes <= n; i += kLanes) total += lane_popcount(load(a + i));
    for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

std::size_t or_popcount_neon(const Word* a, const Word* b, std::size_t n) {
    std::size_t total = 0, i = 0;
    for (; i + kLanes <= n; i += kLanes) total += lane_popcount(vorrq_u64(load(a + i), load(b + i)));
    for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i] | b[i]));
    return total;
}

bool and_parity_neon(const Word* a, const Word* b, std::size_t n) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) acc = veorq_u64(acc, vandq_u64(load(a + i), load(b + i)));
    Word folded = fold_xor(acc);
    for (; i < n; ++i) folded ^= a[i] & b[i];
    return std::popcount(folded) & 1;
}

bool symplectic_parity_neon(const Word* ax, const Word* az, const Word* bx, const Word* bz,
                            std::size_t n) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        uint64x2_t xz = vandq_u64(load(ax + i), load(bz + i));
        uint64x2_t zx = vandq_u64(load(az + i), load(bx + i));
        acc = veorq_u64(acc, veorq_u64(xz, zx));
    }
    Word folded = fold_xor(acc);
    for (; i < n; ++i) folded ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
    return std::popcount(folded) & 1;
}

bool any_neon(const Word* a, std::size_t n) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) acc = vorrq_u64(acc, load(a + i));
    Word folded = vgetq_lane_u64(acc, 0) | vgetq_lane_u64(acc, 1);
    for (; i < n; ++i) folded |= a[i];
    return folded != 0;
}

constexpr KernelTable kNeon{
    "neon",          xor_into_neon,          popcount_neon, or_popcount_neon,
    and_parity_neon, symplectic_parity_neon, any_neon,
};

}  // namespace

const KernelTable* neon_kernels() { return &kNeon; }

}  // namespace stabland::simd

#else

namespace stabland::simd {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace stabland::simd

#endif
