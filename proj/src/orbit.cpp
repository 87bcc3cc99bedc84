#include "qcl/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcl/parallel.hpp"
#include "qcl/simd/kernels.hpp"
#include "qcl/stats.hpp"

namespace qcl::orbit {

namespace {

constexpr std::size_t kChunk = 8192;

void require_same_r(double a, double b) {
    if (a != b) throw std::invalid_argument("orbit elements live at different curvatures");
}

// sinh(x)/x
double sinhc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

double uniform_mu(double lambda, double r, double u) {
    const double mu = lambda + std::log(u + (1.0 - u) * std::exp(-2.0 * r * lambda)) / r;
    return std::clamp(mu, -lambda, lambda);
}

double f_modulus(double lambda, double mu, double r) {
    const double prod = 4.0 * std::sinh(0.5 * r * (lambda + mu)) * std::sinh(0.5 * r * (lambda - mu));
    return std::sqrt(std::max(prod, 0.0)) / (2.0 * r);
}

template <class Sample>
McResult chunked_mean(std::size_t n, std::uint64_t seed, Sample&& sample_chunk) {
    if (n == 0) throw std::invalid_argument("Monte Carlo needs n > 0");
    const std::size_t chunks = chunk_count(n, kChunk);
    std::vector<stats::Accumulator> re(chunks), im(chunks);
    for_each_chunk(chunks, [&](std::size_t c) {
        Rng rng = make_stream(seed, c);
        const std::size_t m = std::min(kChunk, n - c * kChunk);
        sample_chunk(rng, m, re[c], im[c]);
    });
    stats::Accumulator r_all, i_all;
    for (std::size_t c = 0; c < chunks; ++c) {
        r_all.merge(re[c]);
        i_all.merge(im[c]);
    }
    const auto er = r_all.estimate(), ei = i_all.estimate();
    return {{er.mean, ei.mean}, std::hypot(er.std_error, ei.std_error), n};
}

}  // namespace

OrbitParams OrbitParams::make(double lambda, double r) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("orbit: Lambda must be > 0");
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("orbit: r must be > 0");
    return {lambda, r};
}

DualGroupElement sample_orbit(const OrbitParams& o, Rng& rng) {
    const double mu = uniform_mu(o.lambda, o.r, uniform01(rng));
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    return {o.r, mu, std::polar(f_modulus(o.lambda, mu, o.r), theta)};
}

void sample_orbit_batch(const OrbitParams& o, Rng& rng, std::span<DualGroupElement> out) {
    const std::size_t m = out.size();
    std::vector<double> u(m), theta(m), mu(m), fa(m);
    for (std::size_t i = 0; i < m; ++i) {
        u[i] = uniform01(rng);
        theta[i] = 2.0 * std::numbers::pi * uniform01(rng);
    }
    simd::active().orbit_coordinates(u, o.lambda, o.r, mu, fa);
    for (std::size_t i = 0; i < m; ++i) out[i] = {o.r, mu[i], std::polar(fa[i], theta[i])};
}

DualGroupElement multiply(const DualGroupElement& a, const DualGroupElement& b) {
    require_same_r(a.r, b.r);
    const double r = a.r;
    return {r, a.H + b.H, a.F * std::exp(0.5 * r * b.H) + std::exp(-0.5 * r * a.H) * b.F};
}

DualGroupElement inverse(const DualGroupElement& g) { return {g.r, -g.H, -g.F}; }

double radial_part(const DualGroupElement& g) {
    const double r = g.r;
    const double f2 = std::norm(g.F);
    if (r < simd::kLogDomainCurvature) {
        const double s = std::sinh(0.5 * r * g.H);
        const double eps = 2.0 * s * s + 2.0 * r * r * f2;
        return std::log1p(eps + std::sqrt(eps * (2.0 + eps))) / r;
    }
    const double a = r * std::abs(g.H);
    const double l1 = a - std::numbers::ln2 + std::log1p(std::exp(-2.0 * a));
    const double l2 = std::log(2.0 * r * r * f2);
    const double hi = std::max(l1, l2), lo = std::min(l1, l2);
    const double l = hi + std::log1p(std::exp(lo - hi));
    return (l + std::log1p(std::sqrt(-std::expm1(-2.0 * l)))) / r;
}

Eigen::Matrix2cd to_matrix(const DualGroupElement& g) {
    Eigen::Matrix2cd m;
    m << std::exp(0.5 * g.r * g.H), 0.0, 2.0 * g.r * g.F, std::exp(-0.5 * g.r * g.H);
    return m;
}

DualGroupElement exp_coordinates(const Coordinates& x, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("exp_coordinates requires r > 0");
    return {r, x.H, x.F * sinhc(0.5 * r * x.H)};
}

Coordinates log_element(const DualGroupElement& g) { return {g.H, g.F / sinhc(0.5 * g.r * g.H)}; }

Coordinates log_group_law(const Coordinates& x, const Coordinates& y, double r) {
    return log_element(multiply(exp_coordinates(x, r), exp_coordinates(y, r)));
}

Complex spherical_function(Complex z, double lambda, double r) {
    const double a = r * lambda;
    if (!(a > 0.0)) throw std::invalid_argument("spherical_function requires r Lambda > 0");
    const double tail = -std::expm1(-2.0 * a);  // 1 - e^{-2a}
    if (z == Complex(0.0)) return 2.0 * a * std::exp(-a) / tail;
    // sinh(za)/sinh(a) = (e^{(z-1)a} - e^{-(z+1)a}) / (1 - e^{-2a})
    return (std::exp((z - 1.0) * a) - std::exp(-(z + 1.0) * a)) / (z * tail);
}

Complex monomial_value(const DualGroupElement& g, int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("monomial_value: negative power");
    Complex out = 1.0;
    for (int k = 0; k < a; ++k) out *= std::conj(g.F);
    for (int k = 0; k < b; ++k) out *= g.F;
    for (int k = 0; k < c; ++k) out *= g.H;
    return out;
}

McResult mc_orbit_expectation(const OrbitParams& o, const Observable& f, std::size_t n,
                              std::uint64_t seed) {
    return chunked_mean(n, seed, [&](Rng& rng, std::size_t m, stats::Accumulator& re,
                                     stats::Accumulator& im) {
        std::vector<DualGroupElement> g(m);
        sample_orbit_batch(o, rng, g);
        for (const auto& x : g) {
            const Complex v = f(x);
            re.add(v.real());
            im.add(v.imag());
        }
    });
}

McResult mc_convolution_expectation(const OrbitParams& o1, const OrbitParams& o2, const Observable& f,
                                    std::size_t n, std::uint64_t seed) {
    require_same_r(o1.r, o2.r);
    return chunked_mean(n, seed, [&](Rng& rng, std::size_t m, stats::Accumulator& re,
                                     stats::Accumulator& im) {
        std::vector<DualGroupElement> g1(m), g2(m);
        sample_orbit_batch(o1, rng, g1);
        sample_orbit_batch(o2, rng, g2);
        for (std::size_t i = 0; i < m; ++i) {
            const Complex v = f(multiply(g1[i], g2[i]));
            re.add(v.real());
            im.add(v.imag());
        }
    });
}

namespace {

// Weighted sums with weights e^{lw - shift}.
struct WeightedSums {
    double shift = -std::numeric_limits<double>::infinity();
    double w = 0.0, wf = 0.0, ww = 0.0, wwf = 0.0, wwff = 0.0;

    void rescale(double to) {
        if (shift == to) return;
        const double s = std::exp(shift - to), s2 = s * s;
        w *= s;
        wf *= s;
        ww *= s2;
        wwf *= s2;
        wwff *= s2;
        shift = to;
    }
    void merge(WeightedSums o) {
        const double to = std::max(shift, o.shift);
        rescale(to);
        o.rescale(to);
        w += o.w;
        wf += o.wf;
        ww += o.ww;
        wwf += o.wwf;
        wwff += o.wwff;
    }
};

double log_orbit_density(double mu, double lambda, double r) {
    // r e^{r mu} / (2 sinh(r Lambda)), written to avoid overflow
    return std::log(r) + r * (mu - lambda) - std::log1p(-std::exp(-2.0 * r * lambda));
}

}  // namespace

CrystalLimitResult crystal_limit_functional(const OrbitParams& o1, const OrbitParams& o2,
                                            const Polynomial& phi, const Polynomial& psi,
                                            std::size_t n, std::uint64_t seed) {
    require_same_r(o1.r, o2.r);
    if (n == 0) throw std::invalid_argument("crystal_limit_functional needs n > 0");
    const double r = o1.r;
    const double log_proposal = -std::log(2.0 * o1.lambda) - std::log(2.0 * o2.lambda);
    const std::size_t chunks = chunk_count(n, kChunk);
    std::vector<WeightedSums> parts(chunks);

    for_each_chunk(chunks, [&](std::size_t c) {
        Rng rng = make_stream(seed, c);
        const std::size_t m = std::min(kChunk, n - c * kChunk);
        std::vector<double> lw(m), fv(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double mu1 = -o1.lambda + 2.0 * o1.lambda * uniform01(rng);
            const double mu2 = -o2.lambda + 2.0 * o2.lambda * uniform01(rng);
            const double t1 = 2.0 * std::numbers::pi * uniform01(rng);
            const double t2 = 2.0 * std::numbers::pi * uniform01(rng);
            const DualGroupElement g1{r, mu1, std::polar(f_modulus(o1.lambda, mu1, r), t1)};
            const DualGroupElement g2{r, mu2, std::polar(f_modulus(o2.lambda, mu2, r), t2)};
            const DualGroupElement g = multiply(g1, g2);
            lw[i] = -r * g.H + log_orbit_density(mu1, o1.lambda, r) +
                    log_orbit_density(mu2, o2.lambda, r) - log_proposal;
            fv[i] = phi(radial_part(g)) * psi(g.H);
        }
        WeightedSums& s = parts[c];
        s.shift = *std::max_element(lw.begin(), lw.end());
        for (std::size_t i = 0; i < m; ++i) {
            const double w = std::exp(lw[i] - s.shift);
            s.w += w;
            s.wf += w * fv[i];
            s.ww += w * w;
            s.wwf += w * w * fv[i];
            s.wwff += w * w * fv[i] * fv[i];
        }
    });

    WeightedSums total;
    for (const auto& p : parts) total.merge(p);
    CrystalLimitResult res;
    res.n = n;
    res.mean = total.wf / total.w;
    // delta method: sum w_i^2 (f_i - mean)^2 / (sum w_i)^2
    const double num = total.wwff - 2.0 * res.mean * total.wwf + res.mean * res.mean * total.ww;
    res.std_error = std::sqrt(std::max(num, 0.0)) / total.w;
    res.ess = total.w * total.w / total.ww;
    res.low_ess = res.ess < 100.0;
    return res;
}

double archimedes_projection_sample(Rng& rng) {
    std::normal_distribution<double> g;
    for (;;) {
        const double x = g(rng), y = g(rng), z = g(rng);
        const double norm = std::sqrt(x * x + y * y + z * z);
        if (norm > 0.0) return x / norm;
    }
}

}  // namespace qcl::orbit
