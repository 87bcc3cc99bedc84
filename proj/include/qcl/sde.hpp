#pragma once

// Pathwise simulation of the Bougerol-Jeulin process
//   g_t = [[e^{rX_t/2}, 0], [r e^{rX_t/2} I_t, e^{-rX_t/2}]],  I_t = int_0^t e^{-rX_s} d(Y_s + iZ_s),
// its radial part Lambda^r_t and the flat (norm) and crystal (Pitman) references.

#include <complex>
#include <cstdint>
#include <vector>

#include "qcl/orbit.hpp"
#include "qcl/rng.hpp"

namespace qcl::sde {

struct DriverPath {
    double dt = 1e-3;
    double T = 1.0;
    std::vector<double> X, Y, Z;  // length steps() + 1, starting at 0

    std::size_t steps() const { return X.empty() ? 0 : X.size() - 1; }
};

/// floor(T/dt) Gaussian increments per coordinate. Throws unless dt > 0 and T >= dt.
DriverPath sample_driver(double T, double dt, Rng& rng);

/// Left-point sums I_k = sum_{j<k} e^{-r X_j} (dY_j + i dZ_j).
std::vector<std::complex<double>> stochastic_integral(const DriverPath& d, double r);

/// H_k = X_k, F_k = (1/2) e^{r X_k / 2} I_k.
std::vector<orbit::DualGroupElement> bj_state_path(const DriverPath& d, double r);

struct RadialPath {
    double dt = 1e-3;
    std::vector<double> values;
};

/// (1/r) Argcosh(r^2/2 |e^{rX/2} I|^2 + cosh(rX)) on the grid, via the active SIMD kernels.
RadialPath lambda_path(const DriverPath& d, double r);

/// sqrt(X^2 + Y^2 + Z^2), the r -> 0 limit.
RadialPath norm_path(const DriverPath& d);

/// X_k - 2 min_{j<=k} X_j on the same grid, the r -> infinity limit.
RadialPath pitman_path(const DriverPath& d);

/// Maxwell CDF: erf(x/sqrt(2t)) - sqrt(2/(pi t)) x e^{-x^2/(2t)}; 0 for x <= 0.
double bessel3_marginal_cdf(double x, double t);

struct RInvarianceTable {
    std::vector<double> r_grid;
    std::vector<double> ks;                     // vs Maxwell CDF at T
    std::vector<std::vector<double>> pairwise;  // two-sample KS between r-columns
    std::size_t n = 0;
    double T = 1.0;
    double dt = 1e-3;
    std::uint64_t seed = 0;
};

/// Lambda^r_T over n paths for each r (r = 0 uses the norm process); path i uses the
/// stream derive_seed(seed, i) and shares its driver across r.
RInvarianceTable r_invariance_experiment(const std::vector<double>& r_grid, double T, double dt,
                                         std::size_t n, std::uint64_t seed);

enum class Reference { norm, pitman };

struct TrendResult {
    std::vector<double> r_values;
    std::size_t paths = 0;
    std::size_t monotone = 0;  // paths whose sup-errors strictly increase along r_values
    double fraction() const { return paths == 0 ? 0.0 : static_cast<double>(monotone) / paths; }
};

/// e(r) = sup_k |Lambda^r_k - ref_k| per path; counts paths with e(r_0) < e(r_1) < ...
TrendResult pathwise_trend(Reference ref, const std::vector<double>& r_values, double T, double dt,
                           std::size_t paths, std::uint64_t seed);

/// Radial chain at n = floor(1/hbar^2) steps over n_paths, rescaled as hbar (lambda_n + 1);
/// returns the KS distance to the Maxwell CDF at t = 1.
double discrete_pitman_ks(double hbar, std::size_t n_paths, std::uint64_t seed);

}  // namespace qcl::sde
