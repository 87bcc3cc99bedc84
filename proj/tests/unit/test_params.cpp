#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qcl/params.hpp"
#include "qcl/rng.hpp"

using namespace qcl;

TEST_CASE("Params validation") {
    CHECK_NOTHROW(Params::make(0.0, 1.0));
    CHECK_THROWS_AS(Params::make(-0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Params::make(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Params::make(1.0, -1.0), std::invalid_argument);
    const auto p = Params::make(2.0, 0.5);
    CHECK(p.q() == doctest::Approx(std::exp(-2.0)));
    CHECK_FALSE(p.flat());
    CHECK(Params::make(0.0, 1.0).flat());
}

TEST_CASE("HighestWeight lattice rounding") {
    CHECK(HighestWeight::floor(1.0, 0.1).steps() == 10);
    CHECK(HighestWeight::floor(1.0, 0.025).steps() == 40);
    CHECK(HighestWeight::floor(0.99, 0.1).steps() == 9);
    CHECK(HighestWeight::floor(1.0, 0.3).steps() == 3);
    CHECK(HighestWeight::exact(1.5, 0.5).steps() == 3);
    CHECK_THROWS(HighestWeight::exact(1.2, 0.5));
    CHECK_THROWS(HighestWeight::from_steps(-1, 1.0));
    const auto hw = HighestWeight::from_steps(4, 0.25);
    CHECK(hw.dim() == 5);
    CHECK(hw.value() == 1.0);
}

TEST_CASE("seed streams") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
    Rng a = make_stream(5, 9), b = make_stream(5, 9);
    for (int i = 0; i < 10; ++i) CHECK(a() == b());
    Rng c(3);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(c);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
