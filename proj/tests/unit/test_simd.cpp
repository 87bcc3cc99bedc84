#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcl/simd/kernels.hpp"

using namespace qcl::simd;

namespace {

const KernelTable* vector_table() { return avx2_table(); }

std::vector<double> random_vec(std::size_t n, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

double rel(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("scalar kernels against libm") {
    const auto& s = scalar_table();
    CHECK(s.backend == Backend::scalar);
    const auto x = random_vec(101, -30, 30, 1);
    std::vector<double> out(x.size());
    s.exp(x, out);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(rel(out[i], std::exp(x[i])) < 1e-15);
    const auto y = random_vec(101, 1e-5, 1e5, 2);
    s.log(y, out);
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(out[i] - std::log(y[i])) < 1e-14);
}

TEST_CASE("AVX2 kernels match the scalar reference") {
    const KernelTable* v = vector_table();
    if (v == nullptr) {
        MESSAGE("AVX2 backend unavailable; equivalence test skipped");
        return;
    }
    const auto& s = scalar_table();
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 13u, 1000u}) {
        const auto x = random_vec(n, -700, 700, n + 1);
        std::vector<double> a(n), b(n);
        s.exp(x, a);
        v->exp(x, b);
        for (std::size_t i = 0; i < n; ++i) CHECK(rel(a[i], b[i]) < 4e-15);

        const auto y = random_vec(n, 1e-300, 1e300, n + 2);
        s.log(y, a);
        v->log(y, b);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) < 4e-15 * std::max(1.0, std::abs(a[i])));

        const auto xs = random_vec(n, -3, 3, n + 3);
        const auto dy = random_vec(n, -0.1, 0.1, n + 4), dz = random_vec(n, -0.1, 0.1, n + 5);
        for (double r : {0.0, 0.5, 10.0}) {
            std::vector<double> ar(n), ai(n), br(n), bi(n);
            s.weighted_increments(xs, r, dy, dz, ar, ai);
            v->weighted_increments(xs, r, dy, dz, br, bi);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(rel(ar[i], br[i]) < 1e-14);
                CHECK(rel(ai[i], bi[i]) < 1e-14);
            }
        }

        const auto ire = random_vec(n, -2, 2, n + 6), iim = random_vec(n, -2, 2, n + 7);
        for (double r : {1e-3, 0.1, 1.0, 10.0, 25.0, 80.0}) {
            s.bj_radial(xs, ire, iim, r, a);
            v->bj_radial(xs, ire, iim, r, b);
            for (std::size_t i = 0; i < n; ++i) CHECK(rel(a[i], b[i]) < 1e-11);
        }

        const auto u = random_vec(n, 0, 1, n + 8);
        for (double r : {0.1, 1.0, 20.0}) {
            std::vector<double> ma(n), fa(n), mb(n), fb(n);
            s.orbit_coordinates(u, 1.3, r, ma, fa);
            v->orbit_coordinates(u, 1.3, r, mb, fb);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(ma[i] - mb[i]) < 1e-12);
                CHECK(std::abs(fa[i] - fb[i]) < 1e-10 * std::max(1.0, fa[i]));
            }
        }

        const auto ms = s.moments(x), mv = v->moments(x);
        CHECK(rel(ms.sum, mv.sum) < 1e-12);
        CHECK(rel(ms.sum_sq, mv.sum_sq) < 1e-12);
    }
}

TEST_CASE("AVX2 special values") {
    const KernelTable* v = vector_table();
    if (v == nullptr) return;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::vector<double> x{nan, 800.0, -800.0, 0.0, 1e-320, 5.0};
    std::vector<double> out(x.size());
    v->exp(x, out);
    CHECK(std::isnan(out[0]));
    CHECK(std::isinf(out[1]));
    CHECK(out[2] == 0.0);
    CHECK(out[3] == 1.0);
    const std::vector<double> y{1.0, 1e-310, 2.0, 0.5, 1e308};
    std::vector<double> ly(y.size());
    v->log(y, ly);
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(ly[i] == doctest::Approx(std::log(y[i])).epsilon(1e-14));
}

TEST_CASE("kernels reject mismatched spans") {
    for (const KernelTable* t : {&scalar_table(), vector_table()}) {
        if (t == nullptr) continue;
        std::vector<double> a(4), b(3);
        CHECK_THROWS_AS(t->exp(a, b), std::invalid_argument);
    }
}

TEST_CASE("active backend") {
    const auto name = backend_name(active().backend);
    CHECK((name == "scalar" || name == "avx2"));
}
