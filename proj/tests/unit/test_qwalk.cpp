#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "qcl/crystal.hpp"
#include "qcl/qwalk.hpp"

using namespace qcl;
using chains::JointState;

namespace {

// Joint law by sequential projective measurement of (M_k(H), M_k(C)) on the full space
// in the normalized-trace state: P(traj) = |P_n ... P_1|_F^2 / 2^n.
qwalk::TrajectoryLaw brute_force_law(const qwalk::MeasurementFamily& mf) {
    const int n = mf.n;
    const Eigen::Index dim = Eigen::Index{1} << n;
    const double hbar = mf.params.hbar;
    const auto cas = qwalk::casimir_family(mf);
    // projectors[k][(omega, lambda)]
    std::vector<std::map<JointState, Matrix>> projectors(n);
    for (int k = 1; k <= n; ++k) {
        const Matrix h = qwalk::embedded(mf, k, qwalk::Generator::H);
        const Eigen::SelfAdjointEigenSolver<Matrix> es(cas[k - 1]);
        for (std::int64_t l = k % 2; l <= k; l += 2) {
            const double c = casimir_constant(hbar * static_cast<double>(l), mf.params);
            Matrix pc = Matrix::Zero(dim, dim);
            for (Eigen::Index i = 0; i < dim; ++i)
                if (std::abs(es.eigenvalues()(i) - c) < 1e-8 * std::abs(c))
                    pc += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
            for (std::int64_t w = -l; w <= l; w += 2) {
                Matrix ph = Matrix::Zero(dim, dim);
                for (Eigen::Index i = 0; i < dim; ++i)
                    if (std::abs(h(i, i) - hbar * static_cast<double>(w)) < 1e-9) ph(i, i) = 1.0;
                const Matrix p = ph * pc;
                if (p.norm() > 1e-9) projectors[k - 1][{w, l}] = p;
            }
        }
    }
    qwalk::TrajectoryLaw law;
    qwalk::Trajectory traj;
    std::function<void(int, const Matrix&)> rec = [&](int k, const Matrix& acc) {
        if (k == n) {
            law[traj] = acc.squaredNorm() / static_cast<double>(dim);
            return;
        }
        for (const auto& [s, p] : projectors[k]) {
            const Matrix next = p * acc;
            if (next.squaredNorm() < 1e-20) continue;
            traj.push_back(s);
            rec(k + 1, next);
            traj.pop_back();
        }
    };
    rec(0, Matrix::Identity(dim, dim));
    return law;
}

}  // namespace

TEST_CASE("joint trajectory law matches sequential measurement") {
    for (double r : {0.2, 1.0})
        for (int n : {1, 2, 3, 4}) {
            const auto mf = qwalk::build_measurements(n, Params::make(r, 1.0));
            const auto law = qwalk::joint_trajectory_law(mf);
            const auto ref = brute_force_law(mf);
            REQUIRE(law.size() == ref.size());
            for (const auto& [t, p] : ref) {
                REQUIRE(law.count(t) == 1);
                CHECK(law.at(t) == doctest::Approx(p).epsilon(1e-10).scale(1e-12));
            }
        }
}

TEST_CASE("joint law is the predicted Markov chain") {
    for (double r : {0.0, 0.2, 1.0})
        for (double hbar : {0.5, 1.0}) {
            const auto p = Params::make(r, hbar);
            const auto law = qwalk::joint_trajectory_law(qwalk::build_measurements(6, p));
            const auto check = qwalk::markov_check(law, qwalk::predicted_kernel(p));
            CHECK(check.max_deviation < 1e-10);
            CHECK(check.total_mass == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(check.transitions > 0);
        }
}

TEST_CASE("wrong kernels are rejected by markov_check") {
    const auto p = Params::make(1.0, 1.0);
    const auto law = qwalk::joint_trajectory_law(qwalk::build_measurements(5, p));
    CHECK(qwalk::markov_check(law, chains::kernel_joint_q<double>(std::exp(-2.0), true)).max_deviation > 1e-3);
    CHECK(qwalk::markov_check(law, chains::kernel_joint_q<double>(std::exp(-1.0), false)).max_deviation > 1e-3);
    CHECK(qwalk::markov_check(law, chains::kernel_joint_flat<double>()).max_deviation > 1e-3);
}

TEST_CASE("lambda marginal is the Littelmann path law") {
    for (double r : {0.0, 0.5, 2.0}) {
        const auto law = qwalk::joint_trajectory_law(qwalk::build_measurements(6, Params::make(r, 1.0)));
        const auto marg = qwalk::lambda_marginal(law);
        double mass = 0.0;
        for (const auto& [path, prob] : marg) {
            CHECK(prob == doctest::Approx(chains::to_double(qwalk::lr_trajectory_probability(path))).epsilon(1e-12));
            CHECK(prob == doctest::Approx((path.back() + 1) / 64.0).epsilon(1e-12));
            mass += prob;
        }
        CHECK(mass == doctest::Approx(1.0));
    }
}

TEST_CASE("radial law equals the marginal of the joint law and ignores r") {
    for (double r : {0.0, 0.3, 1.0, 3.0}) {
        const auto mf = qwalk::build_measurements(6, Params::make(r, 1.0));
        const auto radial = qwalk::radial_trajectory_law(mf);
        CHECK(qwalk::max_deviation(radial, qwalk::lambda_marginal(qwalk::joint_trajectory_law(mf))) < 1e-12);
        CHECK(radial.size() == 20);
    }
    CHECK(qwalk::radial_dynamics_r_independence(8, Params::make(0.5, 1.0), Params::make(2.0, 1.0)) < 1e-12);
}

TEST_CASE("lr_trajectory_probability") {
    CHECK(qwalk::lr_trajectory_probability({1, 2, 1}) == chains::Rational(1, 4));
    CHECK(qwalk::lr_trajectory_probability({1, 0, 1, 2}) == chains::Rational(3, 16));
    CHECK_THROWS(qwalk::lr_trajectory_probability({0, 1}));
    CHECK_THROWS(qwalk::lr_trajectory_probability({1, 3}));
    CHECK_THROWS(qwalk::lr_trajectory_probability({1, 0, -1}));
}

TEST_CASE("Casimir family commutes") {
    for (double r : {0.2, 1.0, 2.0}) {
        const auto mf = qwalk::build_measurements(6, Params::make(r, 1.0));
        CHECK(qwalk::casimir_commutator_residual(mf) < 1e-12);
    }
}

TEST_CASE("measurement family shape") {
    const auto mf = qwalk::build_measurements(4, Params::make(1.0, 0.5));
    REQUIRE(mf.prefix.size() == 4);
    for (int k = 1; k <= 4; ++k) CHECK(mf.prefix[k - 1].dim() == (1 << k));
    CHECK(qwalk::embedded(mf, 2, qwalk::Generator::E).rows() == 16);
    CHECK_THROWS(qwalk::build_measurements(0, Params::make(1.0, 1.0)));
    CHECK_THROWS(qwalk::build_measurements(qwalk::kMaxSteps + 1, Params::make(1.0, 1.0)));
}

TEST_CASE("isotypic multiplicities: ballot numbers, independent of r") {
    for (double r : {0.0, 0.5, 2.0})
        for (int n : {1, 3, 6, 9}) {
            const auto mf = qwalk::build_measurements(n, Params::make(r, 1.0));
            const auto m = qwalk::isotypic_multiplicities(mf.prefix.back());
            for (int l = n % 2; l <= n; l += 2) CHECK(m.at(l) == oracle::ballot(n, l));
        }
}

TEST_CASE("trace functional equals the crystal expectation") {
    const Polynomial phi{{0.2, 1.0, 0.5}}, psi{{1.0, -0.5, 0.25}};
    for (double r : {0.0, 0.4, 3.0}) {
        const auto p = Params::make(r, 0.5);
        const auto hw1 = HighestWeight::from_steps(3, 0.5), hw2 = HighestWeight::from_steps(4, 0.5);
        const auto rep = coproduct(build_irrep(hw1, p), build_irrep(hw2, p));
        CHECK(qwalk::trace_functional(rep, phi, psi) ==
              doctest::Approx(crystal::expectation(hw1, hw2, phi, psi)).epsilon(1e-10));
    }
}

TEST_CASE("predicted kernel at r = 0 is flat") {
    const auto k = qwalk::predicted_kernel(Params::make(0.0, 1.0));
    const auto row = k.row({1, 3});
    const auto flat = chains::kernel_joint_flat<double>().row({1, 3});
    REQUIRE(row.size() == flat.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        CHECK(row[i].first == flat[i].first);
        CHECK(row[i].second == doctest::Approx(flat[i].second));
    }
}
