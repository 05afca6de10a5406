#include <cstdlib>
#include <string_view>

#include "stabland/simd/kernels.hpp"

namespace stabland::simd {
namespace {

const KernelTable& select() {
    if (const char* forced = std::getenv("STABLAND_SIMD"); forced != nullptr) {
        std::string_view want(forced);
        for (const KernelTable* table : available_kernels())
            if (want == table->name) return *table;
    }
    if (const KernelTable* table = avx2_kernels()) return *table;
    if (const KernelTable* table = neon_kernels()) return *table;
    return scalar_kernels();
}

}  // namespace

std::vector<const KernelTable*> available_kernels() {
    std::vector<const KernelTable*> out{&scalar_kernels()};
    if (const KernelTable* table = avx2_kernels()) out.push_back(table);
    if (const KernelTable* table = neon_kernels()) out.push_back(table);
    return out;
}

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace stabland::simd
