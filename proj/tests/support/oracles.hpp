#pragma once

// Independent reference values: closed forms and brute-force evaluations that do
// not call into the library code under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return std::round(out);
}

/// Number of copies of V(l) in V(1)^{(x) n}: C(n, (n-l)/2) - C(n, (n-l)/2 - 1).
inline std::int64_t ballot(int n, int l) {
    if (l < 0 || l > n || (n - l) % 2 != 0) return 0;
    const int k = (n - l) / 2;
    return static_cast<std::int64_t>(binomial(n, k) - binomial(n, k - 1));
}

/// P(lambda_n = l) for the radial chain from 0.
inline double radial_law(int n, int l) { return ballot(n, l) * (l + 1) / std::ldexp(1.0, n); }

/// Clebsch-Gordan series of V(a) (x) V(b) in lattice units.
inline std::vector<std::int64_t> clebsch_gordan(std::int64_t a, std::int64_t b) {
    std::vector<std::int64_t> out;
    for (std::int64_t c = std::abs(a - b); c <= a + b; c += 2) out.push_back(c);
    return out;
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// Maxwell (Bessel-3 marginal) CDF by integrating the density sqrt(2/pi) x^2 t^{-3/2} e^{-x^2/2t}.
inline double maxwell_cdf(double x, double t) {
    if (x <= 0) return 0.0;
    const double c = std::sqrt(2.0 / M_PI) / std::pow(t, 1.5);
    return simpson([&](double y) { return c * y * y * std::exp(-y * y / (2 * t)); }, 0.0, x, 4000);
}

/// Squared raising coefficients on V(n hbar): c_i with c_{-1} = 0 and
/// c_{i-1} - c_i = hbar sinh(r hbar (2i - n)) / r.
inline std::vector<double> raising_squares(int n, double r, double hbar) {
    std::vector<double> c(n);
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k = 2.0 * i - n;
        const double bracket = r == 0.0 ? hbar * hbar * k : hbar * std::sinh(r * hbar * k) / r;
        prev = prev - bracket;
        c[i] = prev;
    }
    return c;
}

/// Standard-presentation irrep of U_Q(sl2) with K v_i = Q^{2i-n} v_i and
/// E v_i = sqrt([i+1][n-i]) v_{i+1}, F = E^T.
struct StandardIrrep {
    Eigen::MatrixXd K, E, F;
};

inline StandardIrrep standard_irrep(int n, double Q) {
    auto qint = [Q](int m) { return (std::pow(Q, m) - std::pow(Q, -m)) / (Q - 1.0 / Q); };
    StandardIrrep s{Eigen::MatrixXd::Zero(n + 1, n + 1), Eigen::MatrixXd::Zero(n + 1, n + 1),
                    Eigen::MatrixXd::Zero(n + 1, n + 1)};
    for (int i = 0; i <= n; ++i) s.K(i, i) = std::pow(Q, 2 * i - n);
    for (int i = 0; i < n; ++i) s.E(i + 1, i) = std::sqrt(qint(i + 1) * qint(n - i));
    s.F = s.E.transpose();
    return s;
}

/// Density of mu = H on the dressing orbit of radius Lambda: r e^{r mu} / (2 sinh(r Lambda)).
inline double orbit_h_density(double mu, double lambda, double r) {
    return r * std::exp(r * mu) / (2.0 * std::sinh(r * lambda));
}

/// E[H] on the orbit: Lambda coth(r Lambda) - 1/r.
inline double orbit_mean_h(double lambda, double r) { return lambda / std::tanh(r * lambda) - 1.0 / r; }

/// E[e^{r(z-1)H}] on the orbit by quadrature of the H density.
inline std::complex<double> spherical_by_quadrature(std::complex<double> z, double lambda, double r) {
    auto part = [&](bool imag) {
        return simpson(
            [&](double mu) {
                const auto v = std::exp(r * (z - 1.0) * mu) * orbit_h_density(mu, lambda, r);
                return imag ? v.imag() : v.real();
            },
            -lambda, lambda, 20000);
    };
    return {part(false), part(true)};
}

/// Midpoint-rule value of E max(L1 + mu2, L2 - mu1) * psi(mu1 + mu2), mu_i uniform on [-L_i, L_i].
inline double continuum_midpoint(double l1, double l2, const std::function<double(double)>& phi,
                                 const std::function<double(double)>& psi, int n = 1500) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m1 = -l1 + (i + 0.5) * 2 * l1 / n;
        for (int j = 0; j < n; ++j) {
            const double m2 = -l2 + (j + 0.5) * 2 * l2 / n;
            acc += phi(std::max(l1 + m2, l2 - m1)) * psi(m1 + m2);
        }
    }
    return acc / (static_cast<double>(n) * n);
}

/// The continuum value for Lambda1 = Lambda2 = 1, phi = id, psi = 1: 1 + E max(U, V) = 4/3.
inline constexpr double kUnitCornerValue = 4.0 / 3.0;

/// Pitman transform of a lattice path, computed directly.
inline std::vector<std::int64_t> pitman(const std::vector<std::int64_t>& x) {
    std::vector<std::int64_t> out;
    std::int64_t m = 0;
    for (auto v : x) {
        m = std::min(m, v);
        out.push_back(v - 2 * m);
    }
    return out;
}

}  // namespace oracle
