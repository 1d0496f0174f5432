#include "capture/sinc_galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "capture/errors.hpp"

namespace capture::sinc {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
const double kSqrt3 = std::sqrt(3.0);

double sinc_at(double u) {
    // sin(pi u) / (pi u), exact 1 at u = 0.
    if (u == 0.0) return 1.0;
    const double pu = kPi * u;
    return std::sin(pu) / pu;
}

// Interior sinc values S(l, h)(t) for l = -n..n written to out[0..2n].
void interior_sincs(int n, double h, double t, double* out) {
    if (!std::isfinite(t)) {
        for (int l = 0; l <= 2 * n; ++l) out[l] = 0.0;
        return;
    }
    // sin(pi (t - l h)/h) = sin(pi t / h - pi l) = (-1)^l sin(pi t / h)
    const double u0 = t / h;
    const double s0 = std::sin(kPi * u0);
    for (int l = -n; l <= n; ++l) {
        const double u = u0 - l;
        double v;
        if (std::abs(u) < 1e-8) {
            v = sinc_at(u);
        } else {
            const double s = (l % 2 == 0) ? s0 : -s0;
            v = s / (kPi * u);
        }
        out[l + n] = v;
    }
}

// alpha_{-n..n+1} given t = ln(x / (pi/2 - x)) and sin^2 x.
void alpha_from(const SincDiscretization& d, double t, double sin2x, double* out) {
    interior_sincs(d.n, d.h, t, out);
    double boundary = sin2x;
    for (int l = -d.n; l <= d.n; ++l) {
        const double s = std::sin(d.x(l));
        boundary -= s * s * out[l + d.n];
    }
    out[2 * d.n + 1] = boundary;
}

// beta_{-n..n+1} given t = ln sinh y and sech y.
void beta_from(const SincDiscretization& d, double t, double sech_y, double* out) {
    interior_sincs(d.n, d.h, t, out);
    double boundary = sech_y;
    for (int l = -d.n; l <= d.n; ++l) boundary -= (1.0 / std::cosh(d.y(l))) * out[l + d.n];
    out[2 * d.n + 1] = boundary;
}

// Map quantities from cos z; the weight and the map only depend on g = cos^{2/3} z.
struct MapParts {
    cplx g;
    cplx root;  // sqrt(1 + g + g^2)
    cplx den;   // sqrt3 (1 + g) + 2 root
};

MapParts map_parts(cplx cos_z) {
    MapParts m;
    m.g = std::pow(cos_z, 2.0 / 3.0);
    m.root = std::sqrt(1.0 + m.g + m.g * m.g);
    m.den = kSqrt3 * (1.0 + m.g) + 2.0 * m.root;
    return m;
}

double weight_from_cos(cplx cos_z) {
    const MapParts m = map_parts(cos_z);
    const double ag = std::abs(m.g);
    if (ag == 0.0) throw std::invalid_argument("conformal weight is singular at z = pi/2");
    const double ad = std::abs(m.den);
    const double s = ad + std::abs(1.0 - m.g);
    return (4.0 / 3.0) * ad / (ag * s * s);
}

double green_from(cplx w, cplx omega) {
    const double a = w.real(), b = w.imag(), c = omega.real(), d = omega.imag();
    const double am = (a - c) * (a - c), ap = (a + c) * (a + c);
    const double bm = (b - d) * (b - d), bp = (b + d) * (b + d);
    const double num = (am + bm) * (am + bp);
    const double den = (ap + bm) * (ap + bp);
    return std::log(num / den) / (4.0 * kPi);
}

// Quadrature data along one axis for one sub-interval, with basis values at nodes.
struct AxisPiece {
    QuadRule rule;
    Eigen::MatrixXd basis;         // (2n+2) x nodes
    std::vector<double> to_half_pi; // pi/2 - node (x axis only)
};

}  // namespace

double default_step(int n) {
    return std::sqrt(2.0 * kPi / static_cast<double>(std::max(n, 1)));
}

SincDiscretization SincDiscretization::make(int n, double h) {
    if (n < 0) throw std::invalid_argument("sinc half-range must be non-negative");
    SincDiscretization d;
    d.n = n;
    d.h = h > 0.0 ? h : default_step(n);
    for (int l = -n; l <= n; ++l) {
        const double e = std::exp(d.h * l);
        d.x_points.push_back(kPi * e / (2.0 * (1.0 + e)));
        d.y_points.push_back(std::asinh(e));
    }
    d.x_points.push_back(kHalfPi);
    d.y_points.push_back(0.0);
    d.dim = d.axis_size() * d.axis_size();
    return d;
}

int half_range_for_dim(int dim) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
    if (side * side != dim || side < 2 || side % 2 != 0)
        throw std::invalid_argument("dimension must be (2n+2)^2, got " + std::to_string(dim));
    return side / 2 - 1;
}

double cardinal_sinc(double h, int k, double z) {
    if (!(h > 0.0)) throw std::invalid_argument("sinc step must be positive");
    return sinc_at((z - h * k) / h);
}

std::vector<double> basis_alpha_all(const SincDiscretization& disc, double x) {
    std::vector<double> out(static_cast<std::size_t>(disc.axis_size()));
    if (x <= 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
    } else if (x >= kHalfPi) {
        std::fill(out.begin(), out.end(), 0.0);
        out.back() = 1.0;
    } else {
        const double s = std::sin(x);
        alpha_from(disc, std::log(x / (kHalfPi - x)), s * s, out.data());
    }
    return out;
}

std::vector<double> basis_beta_all(const SincDiscretization& disc, double y) {
    std::vector<double> out(static_cast<std::size_t>(disc.axis_size()));
    if (y <= 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        out.back() = 1.0;
    } else {
        beta_from(disc, std::log(std::sinh(y)), 1.0 / std::cosh(y), out.data());
    }
    return out;
}

double basis_alpha(int j, const SincDiscretization& disc, double x) {
    if (j < -disc.n || j > disc.n + 1) throw std::out_of_range("alpha index");
    return basis_alpha_all(disc, x)[static_cast<std::size_t>(j + disc.n)];
}

double basis_beta(int k, const SincDiscretization& disc, double y) {
    if (k < -disc.n || k > disc.n + 1) throw std::out_of_range("beta index");
    return basis_beta_all(disc, y)[static_cast<std::size_t>(k + disc.n)];
}

namespace {

// cos z as sin(pi/2 - z), so that the double nearest pi/2 maps to cos z = 0.
cplx strip_cos(StripPoint z) { return std::sin(cplx(kPi / 2.0 - z.re, -z.im)); }

}  // namespace

std::complex<double> schwarz_map(StripPoint z) {
    const MapParts m = map_parts(strip_cos(z));
    if (std::abs(m.den) == 0.0) throw NumericalError("Schwarz map denominator vanished");
    return std::sqrt((1.0 - m.g) / m.den);
}

double schwarz_relation_residual(StripPoint z) {
    const cplx cz = strip_cos(z);
    const cplx w = schwarz_map(z);
    const cplx w2 = w * w, w4 = w2 * w2;
    const cplx ratio = (w4 + 2.0 * kSqrt3 * w2 - 1.0) / (w4 - 2.0 * kSqrt3 * w2 - 1.0);
    return std::abs(cz * cz - ratio * ratio * ratio);
}

double conformal_weight(StripPoint z) {
    return weight_from_cos(strip_cos(z));
}

double greens_function(StripPoint z, StripPoint zeta) {
    if (z.re == zeta.re && z.im == zeta.im)
        throw std::invalid_argument("Green's function is singular at z == zeta");
    return green_from(std::sin(cplx(z.re, z.im)), std::sin(cplx(zeta.re, zeta.im)));
}

QuadRule sinc_rule_interval(double a, double b, int half, double h) {
    if (!(b > a)) throw std::invalid_argument("empty quadrature interval");
    QuadRule r;
    const double len = b - a;
    for (int i = -half; i <= half; ++i) {
        const double t = i * h;
        const double left = len / (1.0 + std::exp(-t));
        const double right = len / (1.0 + std::exp(t));
        r.nodes.push_back(a + left);
        r.from_left.push_back(left);
        r.to_right.push_back(right);
        r.weights.push_back(h * left * right / len);
    }
    return r;
}

QuadRule sinc_rule_half_line(double a, int half, double h) {
    QuadRule r;
    for (int i = -half; i <= half; ++i) {
        const double left = std::asinh(std::exp(i * h));
        r.nodes.push_back(a + left);
        r.from_left.push_back(left);
        r.to_right.push_back(INFINITY);
        r.weights.push_back(h * std::tanh(left));
    }
    return r;
}

double sinc_quadrature(const QuadRule& rx, const QuadRule& ry,
                       const std::function<double(double, double)>& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rx.nodes.size(); ++i) {
        double row = 0.0;
        for (std::size_t k = 0; k < ry.nodes.size(); ++k) row += ry.weights[k] * f(rx.nodes[i], ry.nodes[k]);
        sum += rx.weights[i] * row;
    }
    return sum;
}

Eigen::MatrixXd assemble_matrix(const SincDiscretization& disc, const AssemblyOptions& opts) {
    const int n = disc.n;
    const int side = disc.axis_size();
    const int quad_half = opts.quad_half > 0 ? opts.quad_half : n;
    const double quad_h = opts.quad_h > 0.0 ? opts.quad_h : disc.h;

    // Pieces of [0, pi/2] split at x_j, and of [0, inf) split at y_k, for every
    // collocation index; the last index has no interior split.
    std::vector<std::vector<AxisPiece>> x_pieces(static_cast<std::size_t>(side));
    std::vector<std::vector<AxisPiece>> y_pieces(static_cast<std::size_t>(side));
    // Complement pi/2 - x_j without cancellation.
    auto x_complement = [&](int j) {
        return kHalfPi / (1.0 + std::exp(disc.h * j));
    };

    for (int j = -n; j <= n + 1; ++j) {
        auto& pieces = x_pieces[static_cast<std::size_t>(j + n)];
        auto add = [&](QuadRule rule, bool right_is_half_pi, double offset_to_half_pi) {
            AxisPiece p;
            p.basis.resize(side, static_cast<Eigen::Index>(rule.nodes.size()));
            std::vector<double> vals(static_cast<std::size_t>(side));
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double xi = rule.nodes[i];
                const double comp = right_is_half_pi ? rule.to_right[i] : offset_to_half_pi + rule.to_right[i];
                const double s = std::sin(xi);
                alpha_from(disc, std::log(xi) - std::log(comp), s * s, vals.data());
                p.to_half_pi.push_back(comp);
                for (int l = 0; l < side; ++l) p.basis(l, static_cast<Eigen::Index>(i)) = vals[static_cast<std::size_t>(l)];
            }
            p.rule = std::move(rule);
            pieces.push_back(std::move(p));
        };
        if (j <= n) {
            const double xj = disc.x(j);
            add(sinc_rule_interval(0.0, xj, quad_half, quad_h), false, x_complement(j));
            add(sinc_rule_interval(xj, kHalfPi, quad_half, quad_h), true, 0.0);
        } else {
            add(sinc_rule_interval(0.0, kHalfPi, quad_half, quad_h), true, 0.0);
        }
    }

    for (int k = -n; k <= n + 1; ++k) {
        auto& pieces = y_pieces[static_cast<std::size_t>(k + n)];
        auto add = [&](QuadRule rule) {
            AxisPiece p;
            p.basis.resize(side, static_cast<Eigen::Index>(rule.nodes.size()));
            std::vector<double> vals(static_cast<std::size_t>(side));
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double eta = rule.nodes[i];
                beta_from(disc, std::log(std::sinh(eta)), 1.0 / std::cosh(eta), vals.data());
                for (int l = 0; l < side; ++l) p.basis(l, static_cast<Eigen::Index>(i)) = vals[static_cast<std::size_t>(l)];
            }
            p.rule = std::move(rule);
            pieces.push_back(std::move(p));
        };
        if (k <= n) {
            const double yk = disc.y(k);
            add(sinc_rule_interval(0.0, yk, quad_half, quad_h));
            add(sinc_rule_half_line(yk, quad_half, quad_h));
        } else {
            add(sinc_rule_half_line(0.0, quad_half, quad_h));
        }
    }

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(disc.dim, disc.dim);
    Eigen::MatrixXd kernel;
    Eigen::MatrixXd block(side, side);

    for (int j = -n; j <= n + 1; ++j) {
        const double xj = disc.x(j);
        for (int k = -n; k <= n + 1; ++k) {
            const double yk = disc.y(k);
            const cplx w = std::sin(cplx(xj, yk));
            block.setZero();
            for (const AxisPiece& px : x_pieces[static_cast<std::size_t>(j + n)]) {
                for (const AxisPiece& py : y_pieces[static_cast<std::size_t>(k + n)]) {
                    const auto nx = static_cast<Eigen::Index>(px.rule.nodes.size());
                    const auto ny = static_cast<Eigen::Index>(py.rule.nodes.size());
                    kernel.resize(nx, ny);
                    for (Eigen::Index i = 0; i < nx; ++i) {
                        const auto iu = static_cast<std::size_t>(i);
                        const double xi = px.rule.nodes[iu];
                        // pi/2 - xi, accurate near the corner where the weight blows up.
                        const double delta = px.to_half_pi[iu];
                        for (Eigen::Index l = 0; l < ny; ++l) {
                            const double eta = py.rule.nodes[static_cast<std::size_t>(l)];
                            // cos(pi/2 - delta + i eta) = sin(delta - i eta)
                            const cplx cos_zeta = std::sin(cplx(delta, -eta));
                            const cplx omega = std::sin(cplx(xi, eta));
                            kernel(i, l) = -green_from(w, omega) * weight_from_cos(cos_zeta) *
                                           px.rule.weights[iu] * py.rule.weights[static_cast<std::size_t>(l)];
                        }
                    }
                    block.noalias() += px.basis * kernel * py.basis.transpose();
                }
            }
            const int row = disc.flat(j, k);
            for (int p = 0; p < side; ++p)
                for (int q = 0; q < side; ++q) a(row, p * side + q) = block(p, q);
        }
    }
    return a;
}

EigenEstimate leading_eigen(const Eigen::MatrixXd& a, const PowerOptions& opts) {
    if (a.rows() != a.cols() || a.rows() == 0) throw std::invalid_argument("matrix must be square");
    Eigen::VectorXd v = Eigen::VectorXd::Ones(a.rows());
    v.normalize();
    double mu = 0.0;
    EigenEstimate est;
    est.dim = static_cast<int>(a.rows());
    for (int it = 1; it <= opts.max_iterations; ++it) {
        Eigen::VectorXd av = a * v;
        const double mu_new = v.dot(av);
        const double residual = (av - mu_new * v).norm();
        const double norm = av.norm();
        if (norm == 0.0) throw NumericalError("power iteration hit the null space");
        v = av / norm;
        if (mu_new < 0.0) v = -v;
        if (std::abs(mu_new - mu) <= opts.tol * std::abs(mu_new) && residual <= std::sqrt(opts.tol) * std::abs(mu_new)) {
            est.mu_m = mu_new;
            est.iterations = it;
            est.residual = residual;
            if (!(mu_new > 0.0)) throw NumericalError("leading eigenvalue is not positive");
            est.lambda_upper = 1.0 / mu_new;
            return est;
        }
        mu = mu_new;
    }
    throw NotConverged("power iteration did not converge", opts.max_iterations);
}

std::vector<ConvergenceRow> convergence_study(const std::vector<int>& dims, const StudyOptions& opts) {
    std::vector<ConvergenceRow> rows;
    for (int dim : dims) {
        const auto disc = SincDiscretization::make(half_range_for_dim(dim), opts.h);
        const Eigen::MatrixXd a = assemble_matrix(disc, opts.assembly);
        rows.push_back({dim, disc.n, disc.h, leading_eigen(a, opts.power)});
    }
    return rows;
}

}  // namespace capture::sinc
