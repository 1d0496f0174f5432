#include "capture/oracles.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "capture/errors.hpp"

namespace capture::oracles {

namespace {

constexpr double kPi = std::numbers::pi;

double m_of(int n, double lambda) {
    const double shift = (2.0 - n) / 2.0;
    return shift + std::sqrt(shift * shift + lambda);
}

// Radial mesh with RK4 stage coefficients cot r and csc^2 r precomputed, so
// repeated shots only differ in mu.
struct ShootingMesh {
    std::vector<double> h;
    // For each step: cot and csc^2 at r, r + h/2, r + h.
    std::vector<std::array<double, 3>> cot, csc2;
    double start = 0.0;

    ShootingMesh(double start_r, double end_r, double max_step) : start(start_r) {
        double r = start_r;
        while (r < end_r) {
            double step = std::min(max_step, 0.02 * r);
            if (r + step >= end_r) step = end_r - r;
            std::array<double, 3> c{}, s{};
            for (int i = 0; i < 3; ++i) {
                const double x = r + 0.5 * i * step;
                const double sn = std::sin(x);
                c[static_cast<std::size_t>(i)] = std::cos(x) / sn;
                s[static_cast<std::size_t>(i)] = 1.0 / (sn * sn);
            }
            h.push_back(step);
            cot.push_back(c);
            csc2.push_back(s);
            r += step;
        }
    }

    double shoot(int n, double lambda, double mu) const {
        const double m = m_of(n, lambda);
        // Frobenius start R = sin^m r, scaled by sin^-m(start).
        double y = 1.0;
        double p = m * std::cos(start) / std::sin(start);
        const double k = n - 1.0;
        auto rhs = [&](std::size_t step, int stage, double yy, double pp) {
            const auto s = static_cast<std::size_t>(stage);
            return -k * cot[step][s] * pp - (mu - lambda * csc2[step][s]) * yy;
        };
        for (std::size_t i = 0; i < h.size(); ++i) {
            const double dt = h[i];
            const double k1y = p, k1p = rhs(i, 0, y, p);
            const double k2y = p + 0.5 * dt * k1p, k2p = rhs(i, 1, y + 0.5 * dt * k1y, p + 0.5 * dt * k1p);
            const double k3y = p + 0.5 * dt * k2p, k3p = rhs(i, 1, y + 0.5 * dt * k2y, p + 0.5 * dt * k2p);
            const double k4y = p + dt * k3p, k4p = rhs(i, 2, y + dt * k3y, p + dt * k3p);
            y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        }
        return y;
    }
};

void check(const ShootingProblem& p) {
    if (p.n < 1 || !(p.lambda > 0.0)) throw std::invalid_argument("invalid cone parameters");
    if (!(p.r0 > p.start && p.r0 < kPi)) throw std::invalid_argument("r0 must lie in (start, pi)");
    if (!(p.step > 0.0 && p.step <= 1e-5)) throw std::invalid_argument("shooting step must lie in (0, 1e-5]");
}

}  // namespace

double shooting_endpoint(const ShootingProblem& p, double mu) {
    check(p);
    return ShootingMesh(p.start, p.r0, p.step).shoot(p.n, p.lambda, mu);
}

double ode_shooting_eigen(const ShootingProblem& p) {
    check(p);
    const ShootingMesh mesh(p.start, p.r0, p.step);
    const double m = m_of(p.n, p.lambda);
    auto [lo, hi] = p.mu_bracket.value_or(std::pair{m + p.lambda, 3.0 * m + p.lambda + p.n});
    double flo = mesh.shoot(p.n, p.lambda, lo);
    const double fhi = mesh.shoot(p.n, p.lambda, hi);
    if (std::signbit(flo) == std::signbit(fhi))
        throw NoSignChange("shooting: R(r0) has the same sign at both bracket ends",
                           {{lo, flo}, {hi, fhi}});
    while (hi - lo > p.mu_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = mesh.shoot(p.n, p.lambda, mid);
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double fd_eigen(const FDGrid& g, const FDOptions& opts) {
    if (g.nr < 2 || g.ntheta < 3 || !(g.r_max > 0.0) || !g.r_boundary)
        throw std::invalid_argument("invalid finite-difference grid");
    const double dr = g.r_max / g.nr;
    const double span = g.periodic ? 2.0 * kPi : g.theta_span;
    const double dt = span / g.ntheta;
    // Angular node range: sector rays are Dirichlet boundaries.
    const int j_lo = g.periodic ? 0 : 1;
    const int j_hi = g.ntheta - 1;
    const int nj = j_hi - j_lo + 1;

    std::vector<double> rb(static_cast<std::size_t>(g.ntheta + 1));
    for (int j = 0; j <= g.ntheta; ++j) rb[static_cast<std::size_t>(j)] = g.r_boundary(j * dt);

    auto inside = [&](int i, int j) {
        if (i < 1) return false;
        if (!g.periodic && (j <= 0 || j >= g.ntheta)) return false;
        const int jj = g.periodic ? ((j % g.ntheta) + g.ntheta) % g.ntheta : j;
        return i * dr < rb[static_cast<std::size_t>(jj)] - 1e-12 * dr;
    };

    std::vector<int> index(static_cast<std::size_t>((g.nr + 1) * nj), -1);
    auto slot = [&](int i, int j) -> int& { return index[static_cast<std::size_t>(i * nj + (j - j_lo))]; };
    int count = 0;
    if (g.periodic) count = 1;  // pole is unknown 0
    for (int i = 1; i <= g.nr; ++i)
        for (int j = j_lo; j <= j_hi; ++j)
            if (inside(i, j)) slot(i, j) = count++;

    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> entries;

    // Theta at which the radius r meets the boundary between theta_a and theta_b.
    auto crossing = [&](double r, double ta, double tb) {
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (ta + tb);
            if (g.r_boundary(mid) > r) ta = mid; else tb = mid;
        }
        return 0.5 * (ta + tb);
    };

    if (g.periodic) {
        // Mean-value stencil at the pole: Lap u(0) ~ 4 (mean over ring - u0) / dr^2.
        entries.emplace_back(0, 0, 4.0 / (dr * dr));
        for (int j = 0; j < g.ntheta; ++j)
            if (inside(1, j)) entries.emplace_back(0, slot(1, j), -4.0 / (dr * dr * g.ntheta));
    }

    for (int i = 1; i <= g.nr; ++i) {
        const double r = i * dr;
        const double cot = std::cos(r) / std::sin(r);
        const double csc2 = 1.0 / (std::sin(r) * std::sin(r));
        for (int j = j_lo; j <= j_hi; ++j) {
            const int row = slot(i, j);
            if (row < 0) continue;
            const double theta = j * dt;

            // Radial neighbours.
            const double hl = dr;
            double hr = dr;
            int right = -1;
            if (inside(i + 1, j)) {
                right = slot(i + 1, j);
            } else {
                hr = rb[static_cast<std::size_t>(j)] - r;
            }
            int left = -1;
            if (i > 1) left = slot(i - 1, j);
            else if (g.periodic) left = 0;

            const double wr_rr = 2.0 / (hr * (hl + hr));
            const double wl_rr = 2.0 / (hl * (hl + hr));
            const double wr_r = hl / (hr * (hl + hr));
            const double wl_r = -hr / (hl * (hl + hr));
            const double wc_r = (hr - hl) / (hl * hr);
            double diag = -(wr_rr + wl_rr) + cot * wc_r;
            if (right >= 0) entries.emplace_back(row, right, -(wr_rr + cot * wr_r));
            if (left >= 0) entries.emplace_back(row, left, -(wl_rr + cot * wl_r));

            // Angular neighbours.
            auto angular = [&](int dj) -> std::pair<double, int> {
                int jn = j + dj;
                if (g.periodic) jn = ((jn % g.ntheta) + g.ntheta) % g.ntheta;
                if (inside(i, g.periodic ? jn : j + dj)) return {dt, slot(i, jn)};
                if (!g.periodic && (j + dj <= 0 || j + dj >= g.ntheta)) return {dt, -1};
                const double tc = crossing(r, theta, theta + dj * dt);
                return {std::abs(tc - theta), -1};
            };
            const auto [ha, na] = angular(+1);
            const auto [hb, nb] = angular(-1);
            const double wa = 2.0 / (ha * (ha + hb));
            const double wb = 2.0 / (hb * (ha + hb));
            diag -= csc2 * (wa + wb);
            if (na >= 0) entries.emplace_back(row, na, -csc2 * wa);
            if (nb >= 0) entries.emplace_back(row, nb, -csc2 * wb);
            entries.emplace_back(row, row, -diag);
        }
    }

    Eigen::SparseMatrix<double> lap(count, count);
    lap.setFromTriplets(entries.begin(), entries.end());
    lap.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(lap);
    if (lu.info() != Eigen::Success) throw NumericalError("finite-difference matrix is singular");

    Eigen::VectorXd x = Eigen::VectorXd::Ones(count);
    double estimate = 0.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        Eigen::VectorXd y = lu.solve(x);
        if (lu.info() != Eigen::Success) throw NumericalError("finite-difference solve failed");
        const double next = x.dot(x) / x.dot(y);
        x = y / y.norm();
        if (it > 0 && std::abs(next - estimate) <= opts.tol * std::abs(next)) return next;
        estimate = next;
    }
    throw NotConverged("inverse iteration did not converge", opts.max_iterations);
}

FDGrid t2_grid(int nr, int ntheta) {
    // Third side of T2 in vertex-centred polar coordinates; see perturbed_domain.
    auto boundary = [](double theta) {
        const double c = std::cos(theta - kPi / 3.0);
        return 2.0 * std::atan((std::sqrt(2.0) * c + std::sqrt(2.0 * c * c + 4.0)) / 2.0);
    };
    FDGrid g;
    g.nr = nr;
    g.ntheta = ntheta;
    g.r_max = boundary(kPi / 3.0);
    g.theta_span = 2.0 * kPi / 3.0;
    g.r_boundary = boundary;
    return g;
}

Extrapolated fd_triangle_eigen(int n) {
    Extrapolated e;
    e.coarse = fd_eigen(t2_grid(n, n));
    e.fine = fd_eigen(t2_grid(2 * n, 2 * n));
    e.value = (4.0 * e.fine - e.coarse) / 3.0;
    return e;
}

std::string highprec_2f1(const HyperParams& p, int digits) {
    using Big = boost::multiprecision::cpp_dec_float_50;
    if (auto why = validate(p)) throw std::invalid_argument(*why);
    if (digits < 1 || digits > 45) throw std::invalid_argument("digits must lie in [1, 45]");

    const Big a(p.alpha), b(p.beta), c(p.gamma), z(p.z);
    const Big eps = pow(Big(10), -(digits + 5));
    Big sum = 1, term = 1;
    constexpr int kMaxTerms = 200000;
    int small_run = 0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const Big kk(k);
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1)) * z;
        sum += term;
        if (term == 0) break;
        // Require several consecutive negligible terms to ride out a shrinking
        // transient before the ratio settles.
        if (abs(term) <= eps * (abs(sum) + 1)) {
            if (++small_run >= 8) break;
        } else {
            small_run = 0;
        }
        if (k == kMaxTerms - 1) throw SeriesNotConverged(static_cast<double>(sum), kMaxTerms);
    }
    std::ostringstream out;
    out.precision(digits);
    out << std::scientific << sum;
    return out.str();
}

}  // namespace capture::oracles
