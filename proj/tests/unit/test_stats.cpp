#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

#include "qcl/stats.hpp"

using namespace qcl;

TEST_CASE("empirical CDF") {
    const stats::Ecdf e({3.0, 1.0, 2.0, 2.0});
    CHECK(e(0.5) == 0.0);
    CHECK(e(1.0) == 0.25);
    CHECK(e(2.0) == 0.75);
    CHECK(e(10.0) == 1.0);
    CHECK(e.size() == 4);
    CHECK(e.sorted()[0] == 1.0);
}

TEST_CASE("KS distance by hand") {
    // sample {0.5} against U(0,1): sup gap is 0.5 on both sides
    CHECK(stats::ks_distance(stats::Ecdf({0.5}), [](double x) { return std::clamp(x, 0.0, 1.0); }) ==
          doctest::Approx(0.5));
    // {0.1, 0.2}: F_n jumps to 1 at 0.2 where F = 0.2 -> gap 0.8
    CHECK(stats::ks_distance(stats::Ecdf({0.1, 0.2}), [](double x) { return std::clamp(x, 0.0, 1.0); }) ==
          doctest::Approx(0.8));
    CHECK_THROWS(stats::ks_distance(stats::Ecdf({}), [](double) { return 0.0; }));
    CHECK(stats::ks_two_sample(stats::Ecdf({1, 2, 3}), stats::Ecdf({1, 2, 3})) == 0.0);
    CHECK(stats::ks_two_sample(stats::Ecdf({1, 2}), stats::Ecdf({3, 4})) == 1.0);
    CHECK(stats::ks_threshold(10000) == doctest::Approx(0.0136));
}

TEST_CASE("KS distance of a uniform sample is small") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u;
    std::vector<double> xs(5000);
    for (auto& x : xs) x = u(rng);
    CHECK(stats::ks_distance(stats::Ecdf(xs), [](double x) { return std::clamp(x, 0.0, 1.0); }) <
          stats::ks_threshold(xs.size()) * 1.3);
}

TEST_CASE("mean and standard error") {
    const std::vector<double> x{1, 2, 3, 4};
    const auto e = stats::mean_stderr(x);
    CHECK(e.mean == 2.5);
    CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    stats::Accumulator a, b;
    a.add(1);
    a.add(2);
    b.add(3);
    b.add(4);
    a.merge(b);
    CHECK(a.estimate().mean == 2.5);
    CHECK(a.estimate().std_error == doctest::Approx(e.std_error));
}

TEST_CASE("chi-square test") {
    const std::vector<std::uint64_t> obs{25, 25, 25, 25};
    const std::vector<double> exp{0.25, 0.25, 0.25, 0.25};
    const auto perfect = stats::chi2_test(obs, exp);
    CHECK(perfect.statistic == 0.0);
    CHECK(perfect.p_value == doctest::Approx(1.0));
    CHECK(perfect.dof == 3);

    const std::vector<std::uint64_t> skew{40, 20, 20, 20};
    const auto res = stats::chi2_test(skew, exp);
    CHECK(res.statistic == doctest::Approx(12.0));
    const boost::math::chi_squared dist(3);
    CHECK(res.p_value == doctest::Approx(boost::math::cdf(boost::math::complement(dist, 12.0))));

    // tiny tail cells are merged
    const std::vector<std::uint64_t> tail{50, 48, 1, 1};
    const std::vector<double> texp{0.5, 0.48, 0.01, 0.01};
    CHECK(stats::chi2_test(tail, texp).cells == 2);
    CHECK_THROWS(stats::chi2_test(std::vector<std::uint64_t>{1}, std::vector<double>{1.0}));
}

TEST_CASE("Gauss-Legendre rules") {
    const auto g2 = stats::gauss_legendre(2);
    CHECK(g2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
    CHECK(g2.weights[0] == doctest::Approx(1.0));
    for (int n : {1, 3, 7, 16, 40}) {
        const auto g = stats::gauss_legendre(n);
        double wsum = 0;
        for (double w : g.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0));
        // exact for degree 2n - 1
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double acc = 0;
            for (int i = 0; i < n; ++i) acc += g.weights[i] * std::pow(g.nodes[i], deg);
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            CHECK(acc == doctest::Approx(exact).scale(1.0).epsilon(1e-12));
        }
    }
    CHECK_THROWS(stats::gauss_legendre(0));
}

TEST_CASE("quadrature with kinks") {
    const auto f = [](double x) { return std::abs(x - 0.3); };
    const double exact = (0.3 * 0.3 + 0.7 * 0.7) / 2;
    const std::vector<double> brk{0.3};
    CHECK(stats::quad1d(f, 0.0, 1.0, 8, brk) == doctest::Approx(exact).epsilon(1e-14));
    CHECK(std::abs(stats::quad1d(f, 0.0, 1.0, 8) - exact) > 1e-6);
    CHECK(stats::quad1d([](double x) { return std::exp(x); }, 0.0, 1.0, 12) == doctest::Approx(std::exp(1.0) - 1));
    const auto g = [](double x, double y) { return std::max(1 + y, 1 - x); };
    CHECK(stats::quad2d(g, -1, 1, -1, 1, 10, 0.0) / 4.0 == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(stats::quad2d([](double x, double y) { return x * y * y; }, 0, 1, 0, 2, 4) == doctest::Approx(4.0 / 3.0));
}
