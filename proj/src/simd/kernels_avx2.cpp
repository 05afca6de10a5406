// Compiled with -mavx2 on x86-64 only; selected at runtime.

#include <bit>

#include "stabland/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>

namespace stabland::simd {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }

// Nibble-table popcount, accumulated as four 64-bit lane sums.
inline __m256i popcount_lanes(__m256i v) {
    const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                           0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_shuffle_epi8(table, _mm256_and_si256(v, low));
    __m256i hi = _mm256_shuffle_epi8(table, _mm256_and_si256(_mm256_srli_epi16(v, 4), low));
    return _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256());
}

inline std::size_t horizontal_sum(__m256i v) {
    alignas(32) Word lanes[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
    return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

inline Word fold_xor(__m256i v) {
    alignas(32) Word lanes[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
    return lanes[0] ^ lanes[1] ^ lanes[2] ^ lanes[3];
}

void xor_into_avx2(Word* dst, const Word* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        __m256i d = _mm256_xor_si256(load(dst + i), load(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d);
    }
    for (; i < n; ++i) dst[i] ^= src[i];
}

std::size_t popcount_avx2(const Word* a, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) acc = _mm256_add_epi64(acc, popcount_lanes(load(a + i)));
    std::size_t total = horizontal_sum(acc);
    for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

std::size_t or_popcount_avx2(const Word* a, const Word* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_or_si256(load(a + i), load(b + i))));
    std::size_t total = horizontal_sum(acc);
    for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i] | b[i]));
    return total;
}

bool and_parity_avx2(const Word* a, const Word* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        acc = _mm256_xor_si256(acc, _mm256_and_si256(load(a + i), load(b + i)));
    Word folded = fold_xor(acc);
    for (; i < n; ++i) folded ^= a[i] & b[i];
    return std::popcount(folded) & 1;
}

bool symplectic_parity_avx2(const Word* ax, const Word* az, const Word* bx, const Word* bz,
                            std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        __m256i xz = _mm256_and_si256(load(ax + i), load(bz + i));
        __m256i zx = _mm256_and_si256(load(az + i), load(bx + i));
        acc = _mm256_xor_si256(acc, _mm256_xor_si256(xz, zx));
    }
    Word folded = fold_xor(acc);
    for (; i < n; ++i) folded ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
    return std::popcount(folded) & 1;
}

bool any_avx2(const Word* a, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) acc = _mm256_or_si256(acc, load(a + i));
    if (!_mm256_testz_si256(acc, acc)) return true;
    for (; i < n; ++i)
        if (a[i]) return true;
    return false;
}

constexpr KernelTable kAvx2{
    "avx2",          xor_into_avx2,          popcount_avx2, or_popcount_avx2,
    and_parity_avx2, symplectic_parity_avx2, any_avx2,
};

}  // namespace

const KernelTable* avx2_kernels() {
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2 : nullptr;
}

}  // namespace stabland::simd

#else

namespace stabland::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace stabland::simd

#endif
