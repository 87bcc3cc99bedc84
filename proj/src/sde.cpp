#include "qcl/sde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qcl/chains.hpp"
#include "qcl/parallel.hpp"
#include "qcl/simd/kernels.hpp"
#include "qcl/stats.hpp"

namespace qcl::sde {

namespace {

// Beyond this |r min X| the weights e^{-rX} are rescaled before squaring.
constexpr double kShiftThreshold = 300.0;

// Lambda from x and log|I|^2 in the log domain (overflow-free for any r x).
double radial_from_log_m2(double x, double log_m2, double r) {
    const double a = r * std::abs(x);
    const double l1 = a - std::numbers::ln2 + std::log1p(std::exp(-2.0 * a));
    const double l2 = std::log(0.5 * r * r) + r * x + log_m2;
    const double hi = std::max(l1, l2), lo = std::min(l1, l2);
    const double l = hi + std::log1p(std::exp(lo - hi));
    return (l + std::log1p(std::sqrt(-std::expm1(-2.0 * l)))) / r;
}

std::vector<double> sup_errors(const DriverPath& d, const std::vector<double>& r_values,
                               const RadialPath& ref) {
    std::vector<double> out;
    for (double r : r_values) {
        const RadialPath l = lambda_path(d, r);
        double e = 0.0;
        for (std::size_t k = 0; k < l.values.size(); ++k)
            e = std::max(e, std::abs(l.values[k] - ref.values[k]));
        out.push_back(e);
    }
    return out;
}

}  // namespace

DriverPath sample_driver(double T, double dt, Rng& rng) {
    if (!(dt > 0.0) || !(T >= dt)) throw std::invalid_argument("sample_driver: need dt > 0 and T >= dt");
    const auto n = static_cast<std::size_t>(std::floor(T / dt + 1e-9));
    DriverPath d;
    d.dt = dt;
    d.T = T;
    d.X.assign(n + 1, 0.0);
    d.Y.assign(n + 1, 0.0);
    d.Z.assign(n + 1, 0.0);
    std::normal_distribution<double> g(0.0, std::sqrt(dt));
    for (std::size_t k = 1; k <= n; ++k) {
        d.X[k] = d.X[k - 1] + g(rng);
        d.Y[k] = d.Y[k - 1] + g(rng);
        d.Z[k] = d.Z[k - 1] + g(rng);
    }
    return d;
}

std::vector<std::complex<double>> stochastic_integral(const DriverPath& d, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("stochastic_integral: r must be >= 0");
    const std::size_t n = d.steps();
    std::vector<double> dy(n), dz(n), re(n), im(n);
    for (std::size_t j = 0; j < n; ++j) {
        dy[j] = d.Y[j + 1] - d.Y[j];
        dz[j] = d.Z[j + 1] - d.Z[j];
    }
    simd::active().weighted_increments(std::span(d.X.data(), n), r, dy, dz, re, im);
    std::vector<std::complex<double>> out(n + 1);
    for (std::size_t k = 0; k < n; ++k) out[k + 1] = out[k] + std::complex<double>(re[k], im[k]);
    return out;
}

std::vector<orbit::DualGroupElement> bj_state_path(const DriverPath& d, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("bj_state_path: r must be > 0");
    const auto i = stochastic_integral(d, r);
    std::vector<orbit::DualGroupElement> out(i.size());
    for (std::size_t k = 0; k < i.size(); ++k)
        out[k] = {r, d.X[k], 0.5 * std::exp(0.5 * r * d.X[k]) * i[k]};
    return out;
}

RadialPath lambda_path(const DriverPath& d, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("lambda_path: r must be > 0");
    const double min_x = *std::min_element(d.X.begin(), d.X.end());
    RadialPath out{d.dt, std::vector<double>(d.X.size())};
    if (r * -min_x <= kShiftThreshold) {
        const auto i = stochastic_integral(d, r);
        std::vector<double> re(i.size()), im(i.size());
        for (std::size_t k = 0; k < i.size(); ++k) {
            re[k] = i[k].real();
            im[k] = i[k].imag();
        }
        simd::active().bj_radial(d.X, re, im, r, out.values);
        return out;
    }
    // I = e^{-r min X} * J with J computed from shifted weights
    std::complex<double> j{};
    out.values[0] = 0.0;
    for (std::size_t k = 0; k + 1 < d.X.size(); ++k) {
        const double w = std::exp(-r * (d.X[k] - min_x));
        j += w * std::complex<double>(d.Y[k + 1] - d.Y[k], d.Z[k + 1] - d.Z[k]);
        const double log_m2 = std::log(std::norm(j)) - 2.0 * r * min_x;
        out.values[k + 1] = radial_from_log_m2(d.X[k + 1], log_m2, r);
    }
    return out;
}

RadialPath norm_path(const DriverPath& d) {
    RadialPath out{d.dt, std::vector<double>(d.X.size())};
    for (std::size_t k = 0; k < d.X.size(); ++k)
        out.values[k] = std::sqrt(d.X[k] * d.X[k] + d.Y[k] * d.Y[k] + d.Z[k] * d.Z[k]);
    return out;
}

RadialPath pitman_path(const DriverPath& d) {
    RadialPath out{d.dt, std::vector<double>(d.X.size())};
    double m = 0.0;
    for (std::size_t k = 0; k < d.X.size(); ++k) {
        m = std::min(m, d.X[k]);
        out.values[k] = d.X[k] - 2.0 * m;
    }
    return out;
}

double bessel3_marginal_cdf(double x, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("bessel3_marginal_cdf: t must be > 0");
    if (x <= 0.0) return 0.0;
    return std::erf(x / std::sqrt(2.0 * t)) -
           std::sqrt(2.0 / (std::numbers::pi * t)) * x * std::exp(-x * x / (2.0 * t));
}

RInvarianceTable r_invariance_experiment(const std::vector<double>& r_grid, double T, double dt,
                                         std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("r_invariance_experiment: n must be > 0");
    for (double r : r_grid)
        if (!(r >= 0.0)) throw std::invalid_argument("r_invariance_experiment: r must be >= 0");
    std::vector<std::vector<double>> samples(r_grid.size(), std::vector<double>(n));
    constexpr std::size_t kChunk = 64;
    for_each_chunk(chunk_count(n, kChunk), [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            Rng rng = make_stream(seed, i);
            const DriverPath d = sample_driver(T, dt, rng);
            for (std::size_t a = 0; a < r_grid.size(); ++a)
                samples[a][i] = r_grid[a] == 0.0 ? norm_path(d).values.back()
                                                 : lambda_path(d, r_grid[a]).values.back();
        }
    });

    RInvarianceTable table{r_grid, {}, {}, n, T, dt, seed};
    const double horizon = dt * static_cast<double>(static_cast<std::size_t>(std::floor(T / dt + 1e-9)));
    std::vector<stats::Ecdf> ecdfs;
    for (auto& s : samples) ecdfs.emplace_back(std::move(s));
    for (const auto& e : ecdfs)
        table.ks.push_back(stats::ks_distance(e, [horizon](double x) { return bessel3_marginal_cdf(x, horizon); }));
    table.pairwise.assign(r_grid.size(), std::vector<double>(r_grid.size(), 0.0));
    for (std::size_t a = 0; a < r_grid.size(); ++a)
        for (std::size_t b = a + 1; b < r_grid.size(); ++b)
            table.pairwise[a][b] = table.pairwise[b][a] = stats::ks_two_sample(ecdfs[a], ecdfs[b]);
    return table;
}

TrendResult pathwise_trend(Reference ref, const std::vector<double>& r_values, double T, double dt,
                           std::size_t paths, std::uint64_t seed) {
    std::vector<char> ok(paths, 0);
    for_each_chunk(paths, [&](std::size_t i) {
        Rng rng = make_stream(seed, i);
        const DriverPath d = sample_driver(T, dt, rng);
        const RadialPath target = ref == Reference::norm ? norm_path(d) : pitman_path(d);
        const auto e = sup_errors(d, r_values, target);
        ok[i] = std::is_sorted(e.begin(), e.end()) &&
                std::adjacent_find(e.begin(), e.end()) == e.end();
    });
    TrendResult res{r_values, paths, 0};
    for (char v : ok) res.monotone += v != 0;
    return res;
}

double discrete_pitman_ks(double hbar, std::size_t n_paths, std::uint64_t seed) {
    if (!(hbar > 0.0)) throw std::invalid_argument("discrete_pitman_ks: hbar must be > 0");
    const int n = static_cast<int>(std::floor(1.0 / (hbar * hbar) + 1e-9));
    const auto ends = chains::simulate_radial_endpoints(n, n_paths, seed);
    std::vector<double> x(ends.size());
    for (std::size_t i = 0; i < ends.size(); ++i) x[i] = hbar * static_cast<double>(ends[i] + 1);
    const double t = hbar * hbar * n;
    return stats::ks_distance(stats::Ecdf(std::move(x)), [t](double v) { return bessel3_marginal_cdf(v, t); });
}

}  // namespace qcl::sde
