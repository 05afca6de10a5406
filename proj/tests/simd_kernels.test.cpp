#include "stabland/simd/kernels.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <vector>

using namespace stabland::simd;

namespace {

std::vector<Word> random_words(std::mt19937_64& rng, std::size_t n) {
    std::vector<Word> out(n);
    for (Word& w : out) w = rng();
    return out;
}

// Lengths straddling every lane/tail boundary of the vector variants.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 100, 257};

}  // namespace

TEST(SimdKernels, scalar_reference_is_always_available) {
    auto tables = available_kernels();
    ASSERT_FALSE(tables.empty());
    EXPECT_STREQ(tables.front()->name, "scalar");
}

TEST(SimdKernels, scalar_matches_bit_definitions) {
    std::mt19937_64 rng(1);
    const KernelTable& s = scalar_kernels();
    for (std::size_t n : kLengths) {
        auto a = random_words(rng, n), b = random_words(rng, n), c = random_words(rng, n), d = random_words(rng, n);
        std::size_t pop = 0, orpop = 0, andpop = 0, symp = 0;
        bool nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            pop += std::popcount(a[i]);
            orpop += std::popcount(a[i] | b[i]);
            andpop += std::popcount(a[i] & b[i]);
            symp += std::popcount(a[i] & d[i]) + std::popcount(b[i] & c[i]);
            nonzero |= a[i] != 0;
        }
        EXPECT_EQ(s.popcount(a.data(), n), pop);
        EXPECT_EQ(s.or_popcount(a.data(), b.data(), n), orpop);
        EXPECT_EQ(s.and_parity(a.data(), b.data(), n), andpop % 2 == 1);
        EXPECT_EQ(s.symplectic_parity(a.data(), b.data(), c.data(), d.data(), n), symp % 2 == 1);
        EXPECT_EQ(s.any(a.data(), n), nonzero);
    }
}

TEST(SimdKernels, every_variant_matches_scalar) {
    std::mt19937_64 rng(2);
    const KernelTable& ref = scalar_kernels();
    for (const KernelTable* table : available_kernels()) {
        SCOPED_TRACE(table->name);
        for (int trial = 0; trial < 20; ++trial) {
            for (std::size_t n : kLengths) {
                auto a = random_words(rng, n), b = random_words(rng, n), c = random_words(rng, n),
                     d = random_words(rng, n);
                EXPECT_EQ(table->popcount(a.data(), n), ref.popcount(a.data(), n));
                EXPECT_EQ(table->or_popcount(a.data(), b.data(), n), ref.or_popcount(a.data(), b.data(), n));
                EXPECT_EQ(table->and_parity(a.data(), b.data(), n), ref.and_parity(a.data(), b.data(), n));
                EXPECT_EQ(table->symplectic_parity(a.data(), b.data(), c.data(), d.data(), n),
                          ref.symplectic_parity(a.data(), b.data(), c.data(), d.data(), n));
                EXPECT_EQ(table->any(a.data(), n), ref.any(a.data(), n));

                auto x1 = a, x2 = a;
                table->xor_into(x1.data(), b.data(), n);
                ref.xor_into(x2.data(), b.data(), n);
                EXPECT_EQ(x1, x2);

                // Sparse inputs exercise the zero/nonzero paths of any().
                std::vector<Word> sparse(n, 0);
                if (n > 0 && trial % 2 == 0) sparse[rng() % n] = Word{1} << (rng() % 64);
                EXPECT_EQ(table->any(sparse.data(), n), ref.any(sparse.data(), n));
            }
        }
    }
}
