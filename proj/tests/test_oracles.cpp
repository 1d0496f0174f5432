#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "capture/cone_spectra.hpp"
#include "capture/errors.hpp"
#include "capture/oracles.hpp"

using namespace capture;
using namespace capture::oracles;

namespace {
constexpr double kPi = std::numbers::pi;

FDGrid cap_grid(int n) {
    FDGrid g;
    g.nr = n;
    g.ntheta = n;
    g.periodic = true;
    g.r_max = kPi / 2.0;
    g.r_boundary = [](double) { return kPi / 2.0; };
    return g;
}
}  // namespace

TEST_CASE("shooting examples") {
    CHECK(std::abs(ode_shooting_eigen({2, 2.25, vertex_angle_delta(2)}) - 5.00463581) < 1e-5);
    CHECK(std::abs(ode_shooting_eigen({2, 2.25, kPi - 1e-4}) - 3.75) < 1e-3);
    CHECK(std::abs(ode_shooting_eigen({3, 5.102, vertex_angle_delta(3)}) - 8.00087815) < 1e-5);
}

TEST_CASE("shooting endpoint brackets the root") {
    const ShootingProblem p{3, 5.102, vertex_angle_delta(3)};
    const double m = m_exponent(3, 5.102);
    CHECK(shooting_endpoint(p, m + 5.102) > 0.0);
    CHECK(shooting_endpoint(p, 3.0 * m + 5.102 + 3.0) < 0.0);
    ShootingProblem narrow = p;
    narrow.mu_bracket = std::pair{8.1, 8.2};
    CHECK_THROWS_AS(ode_shooting_eigen(narrow), NoSignChange);
    ShootingProblem coarse = p;
    coarse.step = 1e-3;
    CHECK_THROWS_AS(ode_shooting_eigen(coarse), std::invalid_argument);
}

TEST_CASE("FD calibration: hemisphere") {
    const double coarse = fd_eigen(cap_grid(40)), fine = fd_eigen(cap_grid(80));
    CHECK(std::abs(fine - 2.0) < 1e-3);
    const double ratio = std::abs(coarse - 2.0) / std::abs(fine - 2.0);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("FD calibration: lune of angle 2pi/3") {
    FDGrid g;
    g.nr = 80;
    g.ntheta = 80;
    g.r_max = kPi;
    g.theta_span = 2.0 * kPi / 3.0;
    g.r_boundary = [](double) { return kPi; };
    CHECK(std::abs(fd_eigen(g) - 3.75) < 0.01);
}

TEST_CASE("FD triangle T2") {
    const Extrapolated e = fd_triangle_eigen(80);
    CHECK(e.value >= 5.10);
    CHECK(e.value <= 5.22);
    CHECK(std::abs(e.value - 5.159) < 5e-3);
    CHECK(e.value == doctest::Approx((4.0 * e.fine - e.coarse) / 3.0));
    // Rayleigh quotient of sin(dist) bounds the eigenvalue from above.
    CHECK(e.value < rayleigh_bound_T2_closed_form());
}

TEST_CASE("FD rejects bad grids") {
    FDGrid g = cap_grid(1);
    CHECK_THROWS_AS(fd_eigen(g), std::invalid_argument);
    g = cap_grid(10);
    g.r_boundary = nullptr;
    CHECK_THROWS_AS(fd_eigen(g), std::invalid_argument);
}

TEST_CASE("extended-precision series") {
    CHECK(std::stod(highprec_2f1({3.0, -2.0, 1.5, 0.0})) == 1.0);
    // 2F1(1,1;2;1/2) = 2 ln 2 to 25 digits
    const std::string v = highprec_2f1({1.0, 1.0, 2.0, 0.5}, 26);
    CHECK(v.rfind("1.386294361119890618834464", 0) == 0);
    const double q = std::sqrt(0.25 + 5.102);
    CHECK(highprec_2f1({2.0 + q, 2.0 - q, 2.5, 0.6}, 20).rfind("4.647287282872638790", 0) == 0);
    CHECK_THROWS_AS(highprec_2f1({1.0, 1.0, -1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(highprec_2f1({1.0, 1.0, 2.0, 0.5}, 60), std::invalid_argument);
}
