#pragma once

// Sinc collocation estimate of the first Dirichlet eigenvalue of the
// equilateral spherical triangle with 2pi/3 angles.
//
// One sixth of the triangle (right angle at a side midpoint, Dirichlet on the
// half-side, Neumann on the two symmetry lines) is mapped conformally onto the
// half strip D = {0 < Re z < pi/2, Im z > 0}. There the eigenproblem becomes
//
//   (1/lambda) u(z) = -int_D G(z, zeta) Psi(zeta) u(zeta) dA(zeta)
//
// with G the mixed Dirichlet/Neumann Green's function of the strip and Psi the
// spherical conformal weight of the map. The operator is discretized by
// collocation on a tensor sinc basis and sinc quadrature.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace capture::sinc {

struct StripPoint {
    double re = 0.0;
    double im = 0.0;
};

// Sinc points and step for basis half-range n. Index l runs over -n..n+1;
// the last entry of each list is the boundary point (x = pi/2, y = 0).
struct SincDiscretization {
    int n = 0;
    double h = 0.0;
    std::vector<double> x_points;
    std::vector<double> y_points;
    int dim = 0;

    // h <= 0 selects default_step(n).
    static SincDiscretization make(int n, double h = 0.0);

    int axis_size() const { return 2 * n + 2; }
    double x(int l) const { return x_points[static_cast<std::size_t>(l + n)]; }
    double y(int l) const { return y_points[static_cast<std::size_t>(l + n)]; }
    // Flattened index of the pair (j, k), both in -n..n+1.
    int flat(int j, int k) const { return (j + n) * axis_size() + (k + n); }
};

// Default sinc step sqrt(2 pi / n).
double default_step(int n);

// Basis half-range n such that (2n+2)^2 == dim; throws if dim is not of that form.
int half_range_for_dim(int dim);

double cardinal_sinc(double h, int k, double z);

double basis_alpha(int j, const SincDiscretization& disc, double x);
double basis_beta(int k, const SincDiscretization& disc, double y);

// Basis values for every index -n..n+1 at one abscissa (length 2n+2).
std::vector<double> basis_alpha_all(const SincDiscretization& disc, double x);
std::vector<double> basis_beta_all(const SincDiscretization& disc, double y);

// Strip -> sixth triangle in the stereographic plane. 0 -> 0, pi/2 ->
// (sqrt6 - sqrt2)/2, i*inf -> i(sqrt6 - sqrt2)/2.
std::complex<double> schwarz_map(StripPoint z);

// Residual of cos^2 z - [(w^4 + 2 sqrt3 w^2 - 1) / (w^4 - 2 sqrt3 w^2 - 1)]^3
// at w = schwarz_map(z).
double schwarz_relation_residual(StripPoint z);

// 4 |dPhi/dz|^2 / (1 + |Phi|^2)^2 in closed form. Rejects z = pi/2.
double conformal_weight(StripPoint z);

// Green's function of the strip: zero on Re z = 0, zero normal derivative on
// Im z = 0 and Re z = pi/2. Rejects z == zeta.
double greens_function(StripPoint z, StripPoint zeta);

// One-dimensional sinc quadrature rule: int f ~= sum_i weights[i] f(nodes[i]).
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    // Distances of each node to the left and right interval ends, computed
    // without cancellation (right is +inf on half lines).
    std::vector<double> from_left;
    std::vector<double> to_right;
};

// Interval (a, b) through t -> (a + b e^t) / (1 + e^t); nodes t = i*h, |i| <= half.
QuadRule sinc_rule_interval(double a, double b, int half, double h);
// Half line (a, inf) through t -> a + asinh(e^t).
QuadRule sinc_rule_half_line(double a, int half, double h);

double sinc_quadrature(const QuadRule& rx, const QuadRule& ry,
                       const std::function<double(double, double)>& f);

struct AssemblyOptions {
    int quad_half = 0;      // quadrature half-range per axis per region; <= 0 means n
    double quad_h = 0.0;    // quadrature step; <= 0 means the basis step
};

// Dense dim x dim collocation matrix, rows (j, k) and columns (p, q) in
// SincDiscretization::flat order.
Eigen::MatrixXd assemble_matrix(const SincDiscretization& disc, const AssemblyOptions& opts = {});

struct EigenEstimate {
    double lambda_upper = 0.0;  // 1 / mu_m
    double mu_m = 0.0;
    int dim = 0;
    int iterations = 0;
    double residual = 0.0;      // ||A v - mu v|| / ||v||

    bool operator==(const EigenEstimate&) const = default;
};

struct PowerOptions {
    double tol = 1e-12;
    int max_iterations = 20000;
};

EigenEstimate leading_eigen(const Eigen::MatrixXd& a, const PowerOptions& opts = {});

struct ConvergenceRow {
    int dim = 0;
    int n = 0;
    double h = 0.0;
    EigenEstimate estimate;

    bool operator==(const ConvergenceRow&) const = default;
};

struct StudyOptions {
    double h = 0.0;  // basis step for every row; <= 0 means default_step(n)
    AssemblyOptions assembly;
    PowerOptions power;
};

std::vector<ConvergenceRow> convergence_study(const std::vector<int>& dims,
                                              const StudyOptions& opts = {});

}  // namespace capture::sinc
