#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qcl/chains.hpp"
#include "qcl/stats.hpp"

using namespace qcl;
using chains::JointState;
using chains::Rational;

TEST_CASE("pitman transform") {
    CHECK(chains::pitman_transform({0, -1, -2, -1, 0, 1}) == chains::LatticePath{0, 1, 2, 3, 4, 5});
    CHECK(chains::pitman_transform({0, 1, 0, -1, 0}) == chains::LatticePath{0, 1, 0, 1, 2});
    CHECK_THROWS(chains::pitman_transform({1, 2}));
    CHECK_THROWS(chains::pitman_transform({0, 2}));
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        chains::LatticePath x{0};
        for (int k = 0; k < 40; ++k) x.push_back(x.back() + (rng() & 1 ? 1 : -1));
        CHECK(chains::pitman_transform(x) == oracle::pitman(x));
    }
}

TEST_CASE("radial kernel values") {
    const auto p = chains::radial_probabilities<Rational>(2);
    CHECK(p[0] == Rational(2, 3));
    CHECK(p[1] == Rational(1, 3));
    const auto row = chains::kernel_radial<double>().row(0);
    REQUIRE(row.size() == 1);
    CHECK(row[0].first == 1);
    CHECK(row[0].second == 1.0);
}

TEST_CASE("radial chain law is ballot-weighted") {
    const auto d = chains::evolve(chains::kernel_radial<Rational>(), chains::Distribution<std::int64_t, Rational>{{0, 1}}, 12);
    CHECK(chains::total_mass(d) == 1);
    for (const auto& [l, m] : d)
        CHECK(chains::to_double(m) == doctest::Approx(oracle::radial_law(12, static_cast<int>(l))).epsilon(1e-15));
    const auto d2 = chains::evolve(chains::kernel_radial<Rational>(), chains::Distribution<std::int64_t, Rational>{{0, 1}}, 2);
    CHECK(d2.at(2) == Rational(3, 4));
}

TEST_CASE("joint q kernel: rows and marginal") {
    for (const Rational& q : {Rational(0), Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
        for (std::int64_t l = 0; l <= 12; ++l) {
            // averaging rows over omega uniform given lambda gives the radial kernel
            Rational up = 0;
            for (std::int64_t w = -l; w <= l; w += 2) {
                const auto p = chains::joint_q_probabilities<Rational>(q, w, l);
                CHECK(p[0] + p[1] + p[2] + p[3] == 1);
                for (const auto& x : p) CHECK(x >= 0);
                up += p[0] + p[1];
            }
            CHECK(up / (l + 1) == chains::radial_probabilities<Rational>(l)[0]);
        }
    }
    CHECK_THROWS(chains::joint_q_probabilities<double>(1.0, 0, 0));
    CHECK_THROWS(chains::joint_q_probabilities<double>(0.5, 1, 0));
    CHECK_THROWS(chains::joint_q_probabilities<double>(0.5, 3, 1));
}

TEST_CASE("flat kernel rows") {
    for (std::int64_t l = 0; l <= 15; ++l)
        for (std::int64_t w = -l; w <= l; w += 2) {
            const auto p = chains::joint_flat_probabilities<Rational>(w, l);
            CHECK(p[0] + p[1] + p[2] + p[3] == 1);
            const auto rad = chains::radial_probabilities<Rational>(l);
            CHECK(p[0] + p[1] == rad[0]);
        }
}

TEST_CASE("joint q approaches the flat kernel linearly in 1 - q") {
    for (std::int64_t l : {1, 4, 9})
        for (std::int64_t w = -l; w <= l; w += 2) {
            const auto flat = chains::joint_flat_probabilities<double>(w, l);
            const auto a = chains::joint_q_probabilities<double>(1 - 1e-3, w, l);
            const auto b = chains::joint_q_probabilities<double>(1 - 1e-4, w, l);
            for (int i = 0; i < 4; ++i) {
                CHECK(std::abs(b[i] - flat[i]) <= std::abs(a[i] - flat[i]) / 5 + 1e-12);
                CHECK(std::abs(b[i] - flat[i]) < 1e-3);
            }
        }
}

TEST_CASE("flip_sign relabels omega") {
    const auto k = chains::kernel_joint_q<double>(0.3, false);
    const auto kf = chains::kernel_joint_q<double>(0.3, true);
    const auto row = k.row({1, 3});
    const auto rowf = kf.row({-1, 3});
    REQUIRE(row.size() == rowf.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        CHECK(row[i].first.omega == -rowf[i].first.omega);
        CHECK(row[i].first.lambda == rowf[i].first.lambda);
        CHECK(row[i].second == doctest::Approx(rowf[i].second));
    }
}

TEST_CASE("q = 0 joint chain moves lambda as Pitman of X") {
    const auto paths = chains::simulate_paths(chains::kernel_joint_q<double>(0.0, true), JointState{0, 0}, 60, 500, 3);
    for (const auto& path : paths) {
        chains::LatticePath x, l;
        for (const auto& s : path) {
            x.push_back(s.omega);
            l.push_back(s.lambda);
        }
        CHECK(chains::pitman_transform(x) == l);
    }
}

TEST_CASE("flat joint chain: omega uniform given lambda") {
    for (int n : {4, 7, 10})
        for (int l = n % 2; l <= n; l += 2) {
            const auto c = chains::conditional_law<Rational>(n, l);
            CHECK(static_cast<std::int64_t>(c.size()) == l + 1);
            for (const auto& [w, p] : c) CHECK(p == Rational(1, l + 1));
        }
    CHECK_THROWS_AS(chains::conditional_law<double>(3, 2), std::domain_error);
}

TEST_CASE("marginals of the joint evolution") {
    const auto d = chains::evolve(chains::kernel_joint_q<Rational>(Rational(1, 3)),
                                  chains::Distribution<JointState, Rational>{{{0, 0}, 1}}, 9);
    const auto lm = chains::lambda_marginal(d);
    for (const auto& [l, m] : lm)
        CHECK(chains::to_double(m) == doctest::Approx(oracle::radial_law(9, static_cast<int>(l))).epsilon(1e-14));
    CHECK(chains::total_mass(chains::omega_marginal(d)) == 1);
}

TEST_CASE("simulated radial endpoints follow the exact law") {
    const int n = 20;
    const auto ends = chains::simulate_radial_endpoints(n, 40000, 12);
    std::vector<std::uint64_t> obs(n + 1, 0);
    for (auto l : ends) ++obs[static_cast<std::size_t>(l)];
    std::vector<double> expected(n + 1);
    for (int l = 0; l <= n; ++l) expected[l] = oracle::radial_law(n, l);
    const auto res = stats::chi2_test(obs, expected);
    CHECK(res.p_value > 1e-3);
}

TEST_CASE("simulation is reproducible and independent of threads") {
    set_max_threads(1);
    const auto a = chains::simulate_radial_endpoints(30, 3000, 77);
    set_max_threads(4);
    const auto b = chains::simulate_radial_endpoints(30, 3000, 77);
    set_max_threads(0);
    CHECK(a == b);
}

TEST_CASE("distribution CSV") {
    std::ostringstream os;
    chains::write_distribution_csv(os, 2, chains::Distribution<std::int64_t, double>{{0, 0.25}, {2, 0.75}});
    CHECK(os.str().find("2,2,0.75") != std::string::npos);
}
