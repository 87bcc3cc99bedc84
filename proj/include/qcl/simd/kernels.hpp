#pragma once

// Data-parallel inner loops with a scalar reference implementation and an AVX2
// variant. The AVX2 table is chosen at runtime when the CPU supports AVX2+FMA;
// QCL_SIMD=scalar in the environment forces the reference path.
//
// All kernels take equally sized spans; mismatched sizes throw std::invalid_argument.

#include <span>
#include <string_view>

namespace qcl::simd {

enum class Backend { scalar, avx2 };

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

struct KernelTable {
    Backend backend;
    void (*exp)(std::span<const double> x, std::span<double> out);
    void (*log)(std::span<const double> x, std::span<double> out);
    /// out = e^{-r x} * (dy, dz)
    void (*weighted_increments)(std::span<const double> x, double r, std::span<const double> dy,
                                std::span<const double> dz, std::span<double> out_re,
                                std::span<double> out_im);
    /// (1/r) Argcosh(cosh(r x) + r^2/2 e^{r x} |i|^2); log-domain when r >= kLogDomainCurvature.
    void (*bj_radial)(std::span<const double> x, std::span<const double> i_re,
                      std::span<const double> i_im, double r, std::span<double> out);
    /// Dressing-orbit coordinates from uniforms u: e^{r mu} uniform on [e^{-r L}, e^{r L}],
    /// |F| = (1/2r) sqrt(2cosh(rL) - 2cosh(r mu)).
    void (*orbit_coordinates)(std::span<const double> u, double lambda, double r,
                              std::span<double> mu, std::span<double> f_abs);
    Moments (*moments)(std::span<const double> x);
};

inline constexpr double kLogDomainCurvature = 20.0;

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();
/// The table selected for this process.
const KernelTable& active();
std::string_view backend_name(Backend b);

}  // namespace qcl::simd
