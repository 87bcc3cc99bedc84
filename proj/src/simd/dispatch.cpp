#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace qcl::simd {

const KernelTable& scalar_table() { return detail::kScalarTable; }

const KernelTable* avx2_table() {
#if defined(QCL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &detail::kAvx2Table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable* table = [] {
        const char* forced = std::getenv("QCL_SIMD");
        if (forced != nullptr && std::string(forced) == "scalar") return &scalar_table();
        const KernelTable* v = avx2_table();
        return v != nullptr ? v : &scalar_table();
    }();
    return *table;
}

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "unknown";
}

}  // namespace qcl::simd
