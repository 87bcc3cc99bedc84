#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qcl/parallel.hpp"
#include "qcl/sde.hpp"
#include "qcl/stats.hpp"

using namespace qcl;

TEST_CASE("driver path shape and increments") {
    Rng rng(1);
    const auto d = sde::sample_driver(1.0, 1e-3, rng);
    CHECK(d.steps() == 1000);
    CHECK(d.X.front() == 0.0);
    double sum_sq = 0.0;
    for (std::size_t k = 1; k < d.X.size(); ++k) sum_sq += std::pow(d.X[k] - d.X[k - 1], 2);
    CHECK(sum_sq == doctest::Approx(1.0).epsilon(0.15));  // quadratic variation
    CHECK_THROWS(sde::sample_driver(1.0, 0.0, rng));
    CHECK_THROWS(sde::sample_driver(0.001, 0.01, rng));
}

TEST_CASE("stochastic integral is the left-point sum") {
    Rng rng(2);
    const auto d = sde::sample_driver(0.5, 1e-3, rng);
    for (double r : {0.0, 0.7, 5.0}) {
        const auto I = sde::stochastic_integral(d, r);
        REQUIRE(I.size() == d.X.size());
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k < d.X.size(); ++k) {
            CHECK(std::abs(I[k] - acc) < 1e-12 * (1 + std::abs(acc)));
            if (k + 1 < d.X.size())
                acc += std::exp(-r * d.X[k]) *
                       std::complex<double>(d.Y[k + 1] - d.Y[k], d.Z[k + 1] - d.Z[k]);
        }
    }
}

TEST_CASE("lambda path is the radial part of the group-valued path") {
    Rng rng(3);
    const auto d = sde::sample_driver(1.0, 1e-3, rng);
    for (double r : {0.1, 1.0, 10.0, 40.0}) {
        const auto states = sde::bj_state_path(d, r);
        const auto lam = sde::lambda_path(d, r);
        REQUIRE(lam.values.size() == states.size());
        for (std::size_t k = 1; k < states.size(); k += 37)
            CHECK(lam.values[k] == doctest::Approx(orbit::radial_part(states[k])).epsilon(1e-9).scale(1e-12));
    }
}

TEST_CASE("limits of the radial path") {
    Rng rng(4);
    const auto d = sde::sample_driver(1.0, 1e-3, rng);
    const auto norm = sde::norm_path(d);
    const auto pit = sde::pitman_path(d);
    const auto small = sde::lambda_path(d, 1e-3);
    const auto large = sde::lambda_path(d, 200.0);
    double e_small = 0, e_large = 0;
    for (std::size_t k = 0; k < norm.values.size(); ++k) {
        e_small = std::max(e_small, std::abs(small.values[k] - norm.values[k]));
        e_large = std::max(e_large, std::abs(large.values[k] - pit.values[k]));
    }
    CHECK(e_small < 1e-2);
    CHECK(e_large < 0.1);
    double m = 0;
    for (std::size_t k = 0; k < d.X.size(); ++k) {
        m = std::min(m, d.X[k]);
        CHECK(pit.values[k] == doctest::Approx(d.X[k] - 2 * m));
        CHECK(norm.values[k] ==
              doctest::Approx(std::sqrt(d.X[k] * d.X[k] + d.Y[k] * d.Y[k] + d.Z[k] * d.Z[k])));
    }
}

TEST_CASE("Maxwell CDF") {
    for (double t : {0.5, 1.0, 2.0})
        for (double x : {0.1, 0.5, 1.0, 2.0, 4.0})
            CHECK(sde::bessel3_marginal_cdf(x, t) == doctest::Approx(oracle::maxwell_cdf(x, t)).epsilon(1e-9));
    CHECK(sde::bessel3_marginal_cdf(-1.0, 1.0) == 0.0);
}

TEST_CASE("r-invariance table") {
    const auto tab = sde::r_invariance_experiment({0.0, 1.0, 10.0}, 1.0, 2e-3, 4000, 5);
    REQUIRE(tab.ks.size() == 3);
    for (double ks : tab.ks) CHECK(ks < 1.5 * stats::ks_threshold(4000));
    REQUIRE(tab.pairwise.size() == 3);
    CHECK(tab.pairwise[0][0] == 0.0);
}

TEST_CASE("r-invariance is independent of threads") {
    set_max_threads(1);
    const auto a = sde::r_invariance_experiment({0.5, 5.0}, 0.5, 2e-3, 500, 7);
    set_max_threads(3);
    const auto b = sde::r_invariance_experiment({0.5, 5.0}, 0.5, 2e-3, 500, 7);
    set_max_threads(0);
    CHECK(a.ks == b.ks);
    CHECK(a.pairwise == b.pairwise);
}

TEST_CASE("pathwise trends") {
    const auto norm = sde::pathwise_trend(sde::Reference::norm, {0.01, 0.1, 1.0}, 1.0, 1e-3, 40, 6);
    CHECK(norm.paths == 40);
    CHECK(norm.fraction() >= 0.9);
    const auto pit = sde::pathwise_trend(sde::Reference::pitman, {80.0, 20.0, 5.0}, 1.0, 1e-3, 40, 6);
    CHECK(pit.fraction() >= 0.9);
}

TEST_CASE("discrete radial chain rescales to the Bessel-3 marginal") {
    CHECK(sde::discrete_pitman_ks(0.05, 20000, 9) < 0.05);
}
