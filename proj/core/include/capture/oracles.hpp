#pragma once

// Brute-force references, kept independent of the production eigenvalue
// routines: ODE shooting for cone eigenvalues, a finite-difference
// Laplace-Beltrami eigensolver on polar grids of S^2, and extended-precision
// hypergeometric series summation.

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "capture/hyperfun.hpp"

namespace capture::oracles {

// sin^2 r R'' + (n-1) sin r cos r R' + (mu sin^2 r - lambda) R = 0 on (0, r0),
// R ~ sin^m r at the origin, R(r0) = 0.
struct ShootingProblem {
    int n = 2;
    double lambda = 0.0;
    double r0 = 0.0;
    // Empty: (m + lambda, 3m + lambda + n).
    std::optional<std::pair<double, double>> mu_bracket;
    double step = 1e-5;
    double start = 1e-6;
    double mu_tol = 1e-8;
};

// R(r0) for a given mu; exposed for the bracket tests.
double shooting_endpoint(const ShootingProblem& p, double mu);
double ode_shooting_eigen(const ShootingProblem& p);

// Polar grid on S^2 about a pole. The domain is {0 < r < r_boundary(theta)}
// over either the sector 0 < theta < theta_span (Dirichlet on both rays) or
// the full circle (periodic in theta, the pole an interior point).
struct FDGrid {
    int nr = 100;
    int ntheta = 100;
    double r_max = 0.0;       // radial extent of the grid, >= max r_boundary
    double theta_span = 0.0;  // sector opening; ignored when periodic
    bool periodic = false;
    std::function<double(double)> r_boundary;
};

struct FDOptions {
    double tol = 1e-12;
    int max_iterations = 500;
};

// Smallest Dirichlet eigenvalue of -Lap on the masked grid. Curved boundary
// crossings use Shortley-Weller distances.
double fd_eigen(const FDGrid& grid, const FDOptions& opts = {});

FDGrid t2_grid(int nr, int ntheta);

struct Extrapolated {
    double coarse = 0.0;
    double fine = 0.0;
    double value = 0.0;  // (4 fine - coarse) / 3
};

// Triangle T2 on grids (n, n) and (2n, 2n), Richardson-extrapolated for O(h^2).
Extrapolated fd_triangle_eigen(int n = 160);

// Series summed in 50-digit decimal arithmetic; returns `digits` significant
// digits. Throws SeriesNotConverged when the terms stop shrinking.
std::string highprec_2f1(const HyperParams& p, int digits = 30);

}  // namespace capture::oracles
