#include <doctest.h>

#include <cmath>

#include "platelab/oracles.hpp"

using namespace platelab;

TEST_SUITE("oracles") {

TEST_CASE("beam reference reproduces the frozen transcendental roots") {
    const std::vector<double> vals = oracles::beam_reference(4);
    CHECK(vals[0] == doctest::Approx(500.5639).epsilon(1e-6));
    CHECK(vals[1] == doctest::Approx(3803.537).epsilon(1e-6));
    for (double v : vals) {
        const double kappa = std::pow(v, 0.25);
        CHECK(std::abs(std::cos(kappa) * std::cosh(kappa) - 1.0) <= 1e-7 * std::cosh(kappa));
    }
    for (size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] > vals[i - 1]);
}

TEST_CASE("beam reference validates the count") {
    CHECK_THROWS_AS(oracles::beam_reference(0), Error);
    CHECK_THROWS_AS(oracles::beam_reference(11), Error);
}

TEST_CASE("conjugation oracle at b = 0 matches the beam") {
    const std::vector<double> fd = oracles::conjugation_oracle(1.0, 0.0, 3);
    const std::vector<double> ref = oracles::beam_reference(3);
    for (int i = 0; i < 3; ++i)
        CHECK(fd[i] == doctest::Approx(ref[i]).epsilon(1e-7));
}

TEST_CASE("conjugation oracle eigenvalues increase with the drift magnitude") {
    const std::vector<double> b0 = oracles::conjugation_oracle(1.0, 0.5, 2);
    const std::vector<double> b1 = oracles::conjugation_oracle(1.0, 1.0, 2);
    const std::vector<double> b2 = oracles::conjugation_oracle(1.0, 2.0, 2);
    for (int i = 0; i < 2; ++i) {
        CHECK(b1[i] > b0[i]);
        CHECK(b2[i] > b1[i]);
    }
}

TEST_CASE("conjugation oracle scales as L^-4 at zero drift") {
    const std::vector<double> unit = oracles::conjugation_oracle(1.0, 0.0, 1);
    const std::vector<double> twice = oracles::conjugation_oracle(2.0, 0.0, 1);
    CHECK(twice[0] == doctest::Approx(unit[0] / 16.0).epsilon(1e-6));
}

TEST_CASE("plate oracle matches the clamped square plate reference value") {
    const Eigen::Vector2d nu0 = Eigen::Vector2d::Zero();
    const std::vector<double> vals = oracles::fd_plate_oracle(1.0, 1.0, nu0, 3);
    // first clamped-plate eigenvalue of the unit square, classical value
    CHECK(vals[0] == doctest::Approx(1294.934).epsilon(2e-3));
    // the second eigenvalue is double
    CHECK(vals[2] == doctest::Approx(vals[1]).epsilon(1e-4));
}

TEST_CASE("plate oracle shifts upward with tangential drift") {
    const Eigen::Vector2d nu0 = Eigen::Vector2d::Zero();
    const Eigen::Vector2d nu1(3.0, 0.0);
    const std::vector<double> base = oracles::fd_plate_oracle(1.0, 1.0, nu0, 1);
    const std::vector<double> shifted = oracles::fd_plate_oracle(1.0, 1.0, nu1, 1);
    CHECK(shifted[0] > base[0]);
}

}  // TEST_SUITE
