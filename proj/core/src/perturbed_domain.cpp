#include "capture/perturbed_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "capture/hyperfun.hpp"

namespace capture {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSector = 2.0 * kPi / 3.0;

// Modes are summed to round-off so that finite-difference checks see a smooth function.
constexpr SeriesOptions kModeSeries{1e-17, 10000};

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(Vec3 v) {
    const double len = std::sqrt(dot(v, v));
    return {v[0] / len, v[1] / len, v[2] / len};
}

void check_modes(const NodalDomainSpec& spec) {
    if (spec.modes != std::array<int, 2>{1, 3})
        throw std::invalid_argument("only the l = 1, 3 superposition is supported");
}

// sin(9t/2) / sin(3t/2) = 3 - 4 sin^2(3t/2), finite on the closed sector.
double mode_ratio(double theta) {
    const double s = std::sin(1.5 * theta);
    return 3.0 - 4.0 * s * s;
}

}  // namespace

double stereo(double r) {
    if (!(r >= 0.0 && r < kPi)) throw std::invalid_argument("stereo: r must lie in [0, pi)");
    return std::tan(0.5 * r);
}

double stereo_inv(double rho) {
    if (!(rho >= 0.0)) throw std::invalid_argument("stereo_inv: rho must be non-negative");
    return 2.0 * std::atan(rho);
}

double t2_boundary_beta(double theta) {
    const double c = std::cos(theta - kPi / 3.0);
    return (std::sqrt(2.0) * c + std::sqrt(2.0 * c * c + 4.0)) / 2.0;
}

double t2_boundary_r(double theta) { return stereo_inv(t2_boundary_beta(theta)); }

Vec3 polar_to_unit(double r, double theta) {
    const double s = std::sin(r);
    return {s * std::cos(theta), s * std::sin(theta), std::cos(r)};
}

std::array<Vec3, 3> t2_inward_poles() {
    const Vec3 first{0.0, 1.0, 0.0};
    const Vec3 second{std::sin(kSector), -std::cos(kSector), 0.0};
    Vec3 third = normalized(cross(polar_to_unit(t2_boundary_r(0.0), 0.0),
                                  polar_to_unit(t2_boundary_r(kSector), kSector)));
    // The vertex at r = 0 lies on the inner side of the third great circle.
    if (third[2] < 0.0) third = {-third[0], -third[1], -third[2]};
    return {first, second, third};
}

double t2_distance_to_boundary(double r, double theta) {
    static const std::array<Vec3, 3> poles = t2_inward_poles();
    const Vec3 x = polar_to_unit(r, theta);
    double d = INFINITY;
    for (const Vec3& p : poles) d = std::min(d, std::asin(std::clamp(dot(x, p), -1.0, 1.0)));
    return d;
}

double radial_mode_u(int l, double mu, double r) {
    if (!(r >= 0.0 && r < kPi)) throw std::invalid_argument("radial mode: r must lie in [0, pi)");
    const double root = std::sqrt(0.25 + mu);
    const double base = 1.5 * l + 0.5;
    const double s = std::sin(0.5 * r);
    return gauss_2f1({base + root, base - root, 1.0 + 1.5 * l, s * s}, kModeSeries);
}

double g2_eigenfunction(const NodalDomainSpec& spec, double r, double theta) {
    check_modes(spec);
    const double s = std::sin(r);
    const double u1 = radial_mode_u(1, spec.mu, r);
    const double u3 = radial_mode_u(3, spec.mu, r);
    return std::pow(s, 1.5) * u1 * std::sin(1.5 * theta) -
           spec.c * std::pow(s, 4.5) * u3 * std::sin(4.5 * theta);
}

double h_function(const NodalDomainSpec& spec, double r, double theta) {
    check_modes(spec);
    const double s = std::sin(r);
    return radial_mode_u(1, spec.mu, r) -
           spec.c * s * s * s * radial_mode_u(3, spec.mu, r) * mode_ratio(theta);
}

double h_on_arc(const NodalDomainSpec& spec, double theta) {
    return h_function(spec, t2_boundary_r(theta), theta);
}

ContainmentCertificate verify_containment(const NodalDomainSpec& spec, double safety) {
    if (!(safety >= 1.0)) throw std::invalid_argument("safety multiplier must be >= 1");
    check_modes(spec);

    ContainmentCertificate cert;
    cert.safety = safety;
    const double end = kPi / 3.0;

    for (double theta : kArcCheckpoints) cert.checkpoints.push_back({theta, h_on_arc(spec, theta)});

    constexpr int kGrid = 4000;
    constexpr double kFd = 1e-6;
    double sup = 0.0;
    for (int i = 0; i <= kGrid; ++i) {
        const double t = end * i / kGrid;
        const double lo = std::max(0.0, t - kFd), hi = std::min(kSector, t + kFd);
        sup = std::max(sup, std::abs((h_on_arc(spec, hi) - h_on_arc(spec, lo)) / (hi - lo)));
    }
    cert.derivative_bound = safety * sup;
    const double bound = std::max(cert.derivative_bound, 1e-300);

    double theta = 0.0;
    while (theta < end) {
        const double value = h_on_arc(spec, theta);
        if (!(value > 0.0)) {
            cert.failed_at = theta;
            cert.failure = "H <= 0 on the arc";
            return cert;
        }
        const double step = value / (2.0 * bound);
        if (step < 1e-8) {
            cert.failed_at = theta;
            cert.failure = "march stalled: H is nearly zero on the arc";
            return cert;
        }
        const double next = std::min(end, theta + step);
        cert.intervals.push_back({theta, next, value - bound * (next - theta)});
        theta = next;
    }

    cert.passed = std::all_of(cert.checkpoints.begin(), cert.checkpoints.end(),
                              [](const Checkpoint& c) { return c.h > 0.0; });
    if (!cert.passed) cert.failure = "non-positive H at a checkpoint";
    return cert;
}

ResidualReport eigen_residual_check(const NodalDomainSpec& spec, int samples, double h,
                                    std::optional<double> mu_check, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    if (!(h > 1e-5 && h < 1e-2)) throw std::invalid_argument("step must lie in (1e-5, 1e-2)");
    const double mu = mu_check.value_or(spec.mu);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ResidualReport report;
    for (int i = 0; i < samples; ++i) {
        const double theta = kSector * (0.05 + 0.9 * unit(rng));
        const double r = 0.1 + (0.95 * t2_boundary_r(theta) - 0.1) * unit(rng);
        auto phi = [&](double rr, double tt) { return g2_eigenfunction(spec, rr, tt); };
        const double c = phi(r, theta);
        const double rp = phi(r + h, theta), rm = phi(r - h, theta);
        const double tp = phi(r, theta + h), tm = phi(r, theta - h);
        const double s = std::sin(r);
        const double lap = (rp - 2.0 * c + rm) / (h * h) +
                           std::cos(r) / s * (rp - rm) / (2.0 * h) +
                           (tp - 2.0 * c + tm) / (h * h * s * s);
        report.max_residual = std::max(report.max_residual, std::abs(lap + mu * c));
        report.phi_scale = std::max(report.phi_scale, std::abs(c));
    }
    return report;
}

}  // namespace capture
