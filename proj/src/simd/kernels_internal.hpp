#pragma once

#include <span>
#include <stdexcept>

#include "qcl/simd/kernels.hpp"

namespace qcl::simd::detail {

inline void require_same(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("simd kernel: span sizes differ");
}

extern const KernelTable kScalarTable;
#if defined(QCL_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace qcl::simd::detail
