#pragma once

// The spherical triangle T2 (three 2pi/3 angles) and the perturbed nodal
// domain G2 that contains it.
//
// Coordinates are geodesic polar coordinates (r, theta) on S^2 centred at a
// vertex of T2. Two sides lie on the rays theta = 0 and theta = 2pi/3; the
// third is a great-circle arc, which under stereographic projection
// rho = tan(r/2) becomes rho = beta(theta).
//
// G2 is the nodal domain of a superposition of the l = 1 and l = 3 separated
// modes of the lune 0 < theta < 2pi/3 at a common eigenvalue mu:
//
//   Phi(r, theta) = sin^{3/2} r u_1(r) sin(3 theta/2) - c sin^{9/2} r u_3(r) sin(9 theta/2)
//                 = sin^{3/2} r sin(3 theta/2) H(r, theta).
//
// T2 is contained in G2 exactly when H > 0 along the third side of T2.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace capture {

using Vec3 = std::array<double, 3>;

double stereo(double r);
double stereo_inv(double rho);

double t2_boundary_beta(double theta);
// Geodesic radius of the third side, 2 atan(beta(theta)).
double t2_boundary_r(double theta);

Vec3 polar_to_unit(double r, double theta);
// Inward unit normals of the three great circles bounding T2.
std::array<Vec3, 3> t2_inward_poles();
// Spherical distance from an interior point to the boundary of T2.
double t2_distance_to_boundary(double r, double theta);

struct NodalDomainSpec {
    double mu = 5.102;
    double c = 0.0003;
    std::array<int, 2> modes{1, 3};
};

// 2F1(3l/2 + 1/2 + sqrt(1/4 + mu), 3l/2 + 1/2 - sqrt(1/4 + mu); 1 + 3l/2; (1 - cos r)/2)
double radial_mode_u(int l, double mu, double r);

double g2_eigenfunction(const NodalDomainSpec& spec, double r, double theta);
double h_function(const NodalDomainSpec& spec, double r, double theta);
// H restricted to the third side of T2.
double h_on_arc(const NodalDomainSpec& spec, double theta);

struct Checkpoint {
    double theta = 0.0;
    double h = 0.0;

    bool operator==(const Checkpoint&) const = default;
};

struct CertifiedInterval {
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    double min_h_bound = 0.0;

    bool operator==(const CertifiedInterval&) const = default;
};

struct ContainmentCertificate {
    static constexpr const char* kMethod =
        "floating-point marching with sampled derivative bound (not interval arithmetic)";

    std::vector<Checkpoint> checkpoints;
    std::vector<CertifiedInterval> intervals;
    double derivative_bound = 0.0;
    double safety = 0.0;
    bool passed = false;
    // Set when the march fails: where and why.
    std::optional<double> failed_at;
    std::string failure;

    bool operator==(const ContainmentCertificate&) const = default;
};

// Marches theta over [0, pi/3] (the arc is symmetric about pi/3): at each
// anchor H(theta0) > 0 and |dH/dtheta| <= M give H > 0 on
// [theta0, theta0 + H(theta0)/(2M)]. M is safety times the largest derivative
// seen on a fine grid. Failure is reported in the certificate, not thrown.
ContainmentCertificate verify_containment(const NodalDomainSpec& spec, double safety = 2.0);

// Arc abscissae probed as spot checks in addition to the march.
inline constexpr std::array<double, 5> kArcCheckpoints{
    0.0, 0.5, 2.0 / 3.0, 2.0 * 3.14159265358979323846 / 9.0, 3.14159265358979323846 / 3.0};

struct ResidualReport {
    double max_residual = 0.0;
    double phi_scale = 0.0;  // max |Phi| over the same samples
};

// max |Lap Phi + mu_check Phi| over random interior points of T2, with the
// spherical Laplacian in polar coordinates discretized by central differences
// of step h. mu_check defaults to spec.mu.
ResidualReport eigen_residual_check(const NodalDomainSpec& spec, int samples, double h,
                                    std::optional<double> mu_check = std::nullopt,
                                    std::uint64_t seed = 20240611);

}  // namespace capture
