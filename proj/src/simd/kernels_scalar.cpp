#include <algorithm>
#include <cmath>
#include <numbers>

#include "kernels_internal.hpp"

namespace qcl::simd::detail {

namespace {

void exp_ref(std::span<const double> x, std::span<double> out) {
    require_same(x.size(), out.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::exp(x[i]);
}

void log_ref(std::span<const double> x, std::span<double> out) {
    require_same(x.size(), out.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::log(x[i]);
}

void weighted_increments_ref(std::span<const double> x, double r, std::span<const double> dy,
                             std::span<const double> dz, std::span<double> out_re,
                             std::span<double> out_im) {
    require_same(x.size(), dy.size());
    require_same(x.size(), dz.size());
    require_same(x.size(), out_re.size());
    require_same(x.size(), out_im.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = std::exp(-r * x[i]);
        out_re[i] = w * dy[i];
        out_im[i] = w * dz[i];
    }
}

double radial_direct(double x, double m2, double r) {
    const double s = std::sinh(0.5 * r * x);
    const double eps = 2.0 * s * s + 0.5 * r * r * std::exp(r * x) * m2;
    return std::log1p(eps + std::sqrt(eps * (2.0 + eps))) / r;
}

double radial_log_domain(double x, double m2, double r) {
    const double a = r * std::abs(x);
    const double l1 = a - std::numbers::ln2 + std::log1p(std::exp(-2.0 * a));
    const double l2 = std::log(0.5 * r * r) + r * x + std::log(m2);
    const double hi = std::max(l1, l2), lo = std::min(l1, l2);
    const double l = hi + std::log1p(std::exp(lo - hi));
    return (l + std::log1p(std::sqrt(-std::expm1(-2.0 * l)))) / r;
}

void bj_radial_ref(std::span<const double> x, std::span<const double> i_re,
                   std::span<const double> i_im, double r, std::span<double> out) {
    require_same(x.size(), i_re.size());
    require_same(x.size(), i_im.size());
    require_same(x.size(), out.size());
    const bool log_domain = r >= kLogDomainCurvature;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double m2 = i_re[i] * i_re[i] + i_im[i] * i_im[i];
        out[i] = log_domain ? radial_log_domain(x[i], m2, r) : radial_direct(x[i], m2, r);
    }
}

void orbit_coordinates_ref(std::span<const double> u, double lambda, double r,
                           std::span<double> mu, std::span<double> f_abs) {
    require_same(u.size(), mu.size());
    require_same(u.size(), f_abs.size());
    const double tail = std::exp(-2.0 * r * lambda);
    for (std::size_t i = 0; i < u.size(); ++i) {
        double m = lambda + std::log(u[i] + (1.0 - u[i]) * tail) / r;
        m = std::clamp(m, -lambda, lambda);
        mu[i] = m;
        const double prod = 4.0 * std::sinh(0.5 * r * (lambda + m)) * std::sinh(0.5 * r * (lambda - m));
        f_abs[i] = std::sqrt(prod) / (2.0 * r);
    }
}

Moments moments_ref(std::span<const double> x) {
    Moments m;
    for (double v : x) {
        m.sum += v;
        m.sum_sq += v * v;
    }
    return m;
}

}  // namespace

const KernelTable kScalarTable{Backend::scalar,          exp_ref,
                               log_ref,                  weighted_increments_ref,
                               bj_radial_ref,            orbit_coordinates_ref,
                               moments_ref};

}  // namespace qcl::simd::detail
