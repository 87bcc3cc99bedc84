#pragma once

// The dual Poisson-Lie group (SU2*)_r in coordinates (H, F): the element
//   g = [[e^{rH/2}, 0], [2r F, e^{-rH/2}]],  E(g) = conj(F(g)).
// Dressing orbits O_r(Lambda) are sampled exactly: e^{r mu} is uniform on
// [e^{-r Lambda}, e^{r Lambda}] and the phase of F is uniform.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>

#include <Eigen/Dense>

#include "qcl/polynomial.hpp"
#include "qcl/rng.hpp"

namespace qcl::orbit {

using Complex = std::complex<double>;

struct DualGroupElement {
    double r = 1.0;
    double H = 0.0;
    Complex F{};

    static DualGroupElement identity(double r) { return {r, 0.0, {}}; }
};

struct OrbitParams {
    double lambda = 1.0;
    double r = 1.0;

    /// Throws std::invalid_argument unless lambda > 0 and r > 0.
    static OrbitParams make(double lambda, double r);
};

DualGroupElement sample_orbit(const OrbitParams& o, Rng& rng);

/// Fills `out` with independent orbit samples using the active SIMD kernels.
void sample_orbit_batch(const OrbitParams& o, Rng& rng, std::span<DualGroupElement> out);

/// H = H1 + H2, F = F1 e^{r H2/2} + e^{-r H1/2} F2. Throws on r mismatch.
DualGroupElement multiply(const DualGroupElement& a, const DualGroupElement& b);
DualGroupElement inverse(const DualGroupElement& g);

/// (1/r) Argcosh(cosh(rH) + 2r^2 |F|^2); log-domain for r >= 20.
double radial_part(const DualGroupElement& g);

/// Matrix form, for oracles.
Eigen::Matrix2cd to_matrix(const DualGroupElement& g);

/// Lie algebra coordinates of X = [[H/2, 0], [2F, -H/2]].
struct Coordinates {
    double H = 0.0;
    Complex F{};
};

DualGroupElement exp_coordinates(const Coordinates& x, double r);
Coordinates log_element(const DualGroupElement& g);

/// X *_r Y = (1/r) log(e^{rX} e^{rY}).
Coordinates log_group_law(const Coordinates& x, const Coordinates& y, double r);

/// sinh(r z Lambda) / (z sinh(r Lambda)); z = 0 gives r Lambda / sinh(r Lambda).
Complex spherical_function(Complex z, double lambda, double r);

/// conj(F)^a F^b H^c, the orbit counterpart of E^a F^b H^c.
Complex monomial_value(const DualGroupElement& g, int a, int b, int c);

using Observable = std::function<Complex(const DualGroupElement&)>;

struct McResult {
    Complex mean{};
    /// sqrt((Var Re f + Var Im f) / n)
    double std_error = 0.0;
    std::size_t n = 0;
};

/// E f(g), g uniform on O_r(Lambda). Chunked streams derived from `seed`.
McResult mc_orbit_expectation(const OrbitParams& o, const Observable& f, std::size_t n,
                              std::uint64_t seed);

/// E f(g1 g2) with g1, g2 independent and uniform on their orbits.
McResult mc_convolution_expectation(const OrbitParams& o1, const OrbitParams& o2, const Observable& f,
                                    std::size_t n, std::uint64_t seed);

struct CrystalLimitResult {
    double mean = 0.0;
    double std_error = 0.0;
    double ess = 0.0;
    bool low_ess = false;  // ess < 100
    std::size_t n = 0;
};

/// E(e^{-rH} phi(Lambda) psi(H)) / E(e^{-rH}) over g1 g2, by self-normalized importance
/// sampling with mu uniform on each orbit's range as proposal.
CrystalLimitResult crystal_limit_functional(const OrbitParams& o1, const OrbitParams& o2,
                                            const Polynomial& phi, const Polynomial& psi,
                                            std::size_t n, std::uint64_t seed);

/// First coordinate of a uniform point on the unit sphere.
double archimedes_projection_sample(Rng& rng);

}  // namespace qcl::orbit
