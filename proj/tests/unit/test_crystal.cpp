#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qcl/crystal.hpp"

using namespace qcl;

TEST_CASE("crystal basis") {
    const auto b = crystal::basis(HighestWeight::from_steps(3, 0.5));
    REQUIRE(b.size() == 4);
    CHECK(b.front().wt == -3);
    CHECK(b.back().wt == 3);
    for (const auto& e : b) CHECK(e.component == 3);
}

TEST_CASE("tensor rule on B(1) (x) B(1)") {
    const crystal::Element up{1, 1}, down{1, -1};
    CHECK(crystal::tensor_rule(up, up) == crystal::TensorValue{2, 2});
    CHECK(crystal::tensor_rule(down, down) == crystal::TensorValue{2, -2});
    CHECK(crystal::tensor_rule(down, up) == crystal::TensorValue{2, 0});
    CHECK(crystal::tensor_rule(up, down) == crystal::TensorValue{0, 0});
}

TEST_CASE("decompose_tensor is the Clebsch-Gordan series") {
    for (std::int64_t a = 0; a <= 9; ++a)
        for (std::int64_t b = 0; b <= 9; ++b) {
            const auto d = crystal::decompose_tensor(HighestWeight::from_steps(a, 1.0), HighestWeight::from_steps(b, 1.0));
            const auto cg = oracle::clebsch_gordan(a, b);
            REQUIRE(d.size() == cg.size());
            for (auto c : cg) CHECK(d.at(c) == 1);
        }
}

TEST_CASE("decompose_power gives ballot numbers") {
    for (int n = 0; n <= 14; ++n) {
        const auto d = crystal::decompose_power(n);
        std::int64_t dim = 0;
        for (const auto& [l, m] : d) {
            CHECK(m == oracle::ballot(n, static_cast<int>(l)));
            dim += m * (l + 1);
        }
        CHECK(dim == (std::int64_t{1} << n));
    }
    CHECK_THROWS(crystal::decompose_power(-1));
}

TEST_CASE("crystal expectation by brute force") {
    const auto hw1 = HighestWeight::from_steps(4, 0.25), hw2 = HighestWeight::from_steps(2, 0.25);
    const Polynomial phi{{0.5, -1.0, 2.0}}, psi{{1.0, 0.0, 1.0}};
    double acc = 0.0;
    int count = 0;
    for (int w1 = -4; w1 <= 4; w1 += 2)
        for (int w2 = -2; w2 <= 2; w2 += 2) {
            const double hw = 0.25 * std::max(4 + w2, -w1 + 2);
            const double wt = 0.25 * (w1 + w2);
            acc += phi(hw) * psi(wt);
            ++count;
        }
    CHECK(crystal::expectation(hw1, hw2, phi, psi) == doctest::Approx(acc / count));
}

TEST_CASE("continuum expectation against closed form and midpoint rule") {
    CHECK(crystal::continuum_expectation(1.0, 1.0, Polynomial::identity(), Polynomial::constant(1.0)) ==
          doctest::Approx(oracle::kUnitCornerValue).epsilon(1e-13));
    const Polynomial phi{{0.0, 0.0, 1.0}}, psi{{1.0, 1.0}};
    const double mid = oracle::continuum_midpoint(
        1.0, 2.0, [&](double x) { return phi(x); }, [&](double x) { return psi(x); });
    CHECK(crystal::continuum_expectation(1.0, 2.0, phi, psi) == doctest::Approx(mid).epsilon(1e-5));
}

TEST_CASE("crystal sums converge to the continuum") {
    double prev = 1.0;
    for (double hbar : {0.1, 0.05, 0.025, 0.0125}) {
        const double v = crystal::expectation(HighestWeight::floor(1.0, hbar), HighestWeight::floor(1.0, hbar),
                                              Polynomial::identity(), Polynomial::constant(1.0));
        const double gap = std::abs(v - oracle::kUnitCornerValue);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 0.005);
}

TEST_CASE("tropical log-sum") {
    for (double r : {0.1, 1.0, 10.0})
        for (double a : {-2.0, 0.0, 1.5})
            for (double b : {-1.0, 0.3, 2.0})
                CHECK(crystal::trop_log_sum(a, b, r) ==
                      doctest::Approx(std::log(std::exp(r * a) + std::exp(r * b)) / r).epsilon(1e-12));
    CHECK(crystal::trop_log_sum(1.0, 0.0, 1e4) == doctest::Approx(1.0));
    CHECK(std::isfinite(crystal::trop_log_sum(500.0, 400.0, 10.0)));
}
