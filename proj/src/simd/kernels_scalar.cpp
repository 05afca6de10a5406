#include <bit>

#include "stabland/simd/kernels.hpp"

namespace stabland::simd {
namespace {

void xor_into_scalar(Word* dst, const Word* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

std::size_t popcount_scalar(const Word* a, std::size_t n) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

std::size_t or_popcount_scalar(const Word* a, const Word* b, std::size_t n) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i] | b[i]));
    return total;
}

bool and_parity_scalar(const Word* a, const Word* b, std::size_t n) {
    Word acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc ^= a[i] & b[i];
    return std::popcount(acc) & 1;
}

bool symplectic_parity_scalar(const Word* ax, const Word* az, const Word* bx, const Word* bz,
                              std::size_t n) {
    Word acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
    return std::popcount(acc) & 1;
}

bool any_scalar(const Word* a, std::size_t n) {
    Word acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc |= a[i];
    return acc != 0;
}

constexpr KernelTable kScalar{
    "scalar",          xor_into_scalar,          popcount_scalar, or_popcount_scalar,
    and_parity_scalar, symplectic_parity_scalar, any_scalar,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace stabland::simd
