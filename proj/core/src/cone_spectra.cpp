#include "capture/cone_spectra.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "capture/errors.hpp"
#include "capture/hyperfun.hpp"
#include "capture/perturbed_domain.hpp"

namespace capture {

namespace {

constexpr double kPi = std::numbers::pi;

void require_base(int n, double lambda) {
    if (n < 1) throw std::invalid_argument("sphere dimension n must be >= 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("base eigenvalue must be positive");
}

// First sign change of f on [lo, hi] scanned at `cells` equal cells; returns
// the cell or nothing. Appends every sample to trace.
bool scan(const auto& f, double lo, double hi, int cells, Bracket& out, ScanTrace& trace, int& evals) {
    double prev_x = lo;
    double prev = f(lo);
    ++evals;
    trace.emplace_back(prev_x, prev);
    for (int i = 1; i <= cells; ++i) {
        const double x = lo + (hi - lo) * i / cells;
        const double v = f(x);
        ++evals;
        trace.emplace_back(x, v);
        if (prev == 0.0 || std::signbit(prev) != std::signbit(v)) {
            out = {prev_x, x};
            return true;
        }
        prev_x = x;
        prev = v;
    }
    return false;
}

}  // namespace

void validate(const ConeSpec& spec) {
    require_base(spec.n, spec.lambda);
    if (!(spec.r0 > 0.0 && spec.r0 <= kPi)) throw std::invalid_argument("r0 must lie in (0, pi]");
}

double m_exponent(int n, double lambda) {
    require_base(n, lambda);
    const double shift = (2.0 - n) / 2.0;
    return shift + std::sqrt(shift * shift + lambda);
}

EigenResult double_cone_eigen(int n, double lambda) {
    EigenResult r;
    r.m = m_exponent(n, lambda);
    r.mu = lambda + r.m;
    r.bracket = {r.mu, r.mu};
    r.closed_form = true;
    return r;
}

double second_mode_eigen(int n, double lambda) {
    return lambda + 3.0 * m_exponent(n, lambda) + n;
}

double truncation_function(const ConeSpec& spec, double mu) {
    const double s = std::sqrt((spec.n - 2.0) * (spec.n - 2.0) + 4.0 * spec.lambda);
    const double t = std::sqrt((spec.n - 1.0) * (spec.n - 1.0) + 4.0 * mu);
    const double half = std::sin(0.5 * spec.r0);
    return gauss_2f1({(1.0 + s + t) / 2.0, (1.0 + s - t) / 2.0, (2.0 + s) / 2.0, half * half});
}

EigenResult truncated_cone_eigen(const ConeSpec& spec, const RootOptions& opts) {
    validate(spec);
    if (spec.r0 == kPi) return double_cone_eigen(spec.n, spec.lambda);

    EigenResult result;
    result.m = m_exponent(spec.n, spec.lambda);
    const double lo = result.m + spec.lambda;
    const double width = 2.0 * result.m + spec.n;
    auto f = [&](double mu) { return truncation_function(spec, mu); };

    // For r0 >= pi/2 the root lies in (m + lambda, 3m + lambda + n), where F
    // runs from 1 to cos r0. Below pi/2 the root is larger; extend by whole widths.
    ScanTrace trace;
    Bracket cell;
    bool found = false;
    const int segments = spec.r0 >= kPi / 2.0 ? 1 : 64;
    for (int seg = 0; seg < segments && !found; ++seg)
        found = scan(f, lo + seg * width, lo + (seg + 1) * width, opts.prescan, cell, trace, result.evals);
    if (!found)
        throw NoSignChange("no sign change of the truncation function in the eigenvalue bracket",
                           std::move(trace));

    double a = cell.lo, b = cell.hi;
    double fa = f(a);
    ++result.evals;
    while (b - a > opts.mu_tol) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        ++result.evals;
        if (fm == 0.0) {
            a = b = mid;
            break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    result.bracket = {a, b};
    result.mu = 0.5 * (a + b);
    return result;
}

double vertex_angle_delta(int k) {
    if (k < 1) throw std::invalid_argument("vertex_angle_delta needs k >= 1");
    return std::acos(-std::sqrt(k / (2.0 * (k + 1.0))));
}

double decay_exponent(int n, double lambda_d) {
    require_base(n, lambda_d);
    const double half = (n - 1.0) / 2.0;
    return 0.5 * (std::sqrt(half * half + lambda_d) - half);
}

std::vector<HatTableRow> hat_t_table(int max_n) {
    if (max_n < 2) throw std::invalid_argument("table needs max_n >= 2");
    std::vector<HatTableRow> rows;
    double lambda_hat = 9.0 / 4.0;
    for (int n = 2; n <= max_n; ++n) {
        if (n > 2) lambda_hat = truncated_cone_eigen({n - 1, lambda_hat, vertex_angle_delta(n - 1)}).mu;
        rows.push_back({n, lambda_hat, decay_exponent(n, double_cone_eigen(n, lambda_hat).mu)});
    }
    return rows;
}

double lambda_critical(double tol) {
    const double r0 = vertex_angle_delta(3);
    const RootOptions inner{1e-12, 64};
    auto excess = [&](double lambda) { return truncated_cone_eigen({3, lambda, r0}, inner).mu - 8.0; };
    double lo = 5.0, hi = 5.2;
    double flo = excess(lo);
    if (!(flo < 0.0 && excess(hi) > 0.0))
        throw NoSignChange("lambda_critical bracket [5.0, 5.2] does not straddle mu = 8", {});
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = excess(mid);
        if (fm == 0.0) return mid;
        if (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double rayleigh_bound_T2_closed_form() {
    const double r3 = std::sqrt(3.0);
    return (2.0 * kPi + r3) / (kPi - r3);
}

double rayleigh_bound_T2(const RayleighOptions& opts) {
    if (opts.panels < 1) throw std::invalid_argument("need at least one panel");
    using Rule = boost::math::quadrature::gauss<double, 8>;
    // Expand the symmetric abscissa table into full [-1, 1] nodes.
    std::vector<double> nodes, weights;
    const auto& abs = Rule::abscissa();
    const auto& wts = Rule::weights();
    for (std::size_t i = 0; i < abs.size(); ++i) {
        nodes.push_back(abs[i]);
        weights.push_back(wts[i]);
        if (abs[i] != 0.0) {
            nodes.push_back(-abs[i]);
            weights.push_back(wts[i]);
        }
    }

    const std::array<Vec3, 3> poles = t2_inward_poles();
    const double sector = 2.0 * kPi / 3.0;
    const int panels = opts.panels;
    double grad = 0.0, mass = 0.0;
    for (int pt = 0; pt < panels; ++pt) {
        const double t0 = sector * pt / panels, t1 = sector * (pt + 1) / panels;
        for (std::size_t it = 0; it < nodes.size(); ++it) {
            const double theta = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * nodes[it];
            const double wt = 0.5 * (t1 - t0) * weights[it];
            const double rb = t2_boundary_r(theta);
            for (int pr = 0; pr < panels; ++pr) {
                const double r0 = rb * pr / panels, r1 = rb * (pr + 1) / panels;
                for (std::size_t ir = 0; ir < nodes.size(); ++ir) {
                    const double r = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * nodes[ir];
                    const double w = wt * 0.5 * (r1 - r0) * weights[ir] * std::sin(r);
                    const Vec3 x = polar_to_unit(r, theta);
                    // sin(dist) to a great circle is the dot product with its pole.
                    double f = 1.0;
                    for (const Vec3& p : poles) f = std::min(f, x[0] * p[0] + x[1] * p[1] + x[2] * p[2]);
                    mass += w * f * f;
                    grad += w * (1.0 - f * f);
                }
            }
        }
    }
    return grad / mass;
}

Verdict verdict(int n) {
    if (n < 1) throw std::invalid_argument("number of predators must be >= 1");
    Verdict v;
    v.n = n;
    auto add = [&](std::string q, double value, std::string src) {
        v.chain.push_back({std::move(q), value, std::move(src)});
    };

    if (n == 1) {
        // The domain on S^1 is an arc of length pi.
        add("lambda_1(D_1)", 1.0, "exact: arc of length pi");
        add("2n+2", 4.0, "criterion");
        add("a(1)", decay_exponent(1, 1.0), "decay_exponent");
    } else if (n == 2) {
        add("lambda_1(T_1)", 9.0 / 4.0, "exact: interval [0, 2pi/3]");
        const double d = double_cone_eigen(2, 9.0 / 4.0).mu;
        add("lambda_1(D_2)", d, "double_cone_eigen");
        add("a(2)", decay_exponent(2, d), "decay_exponent");
    } else if (n == 3) {
        const double upper = rayleigh_bound_T2();
        add("lambda_1(T_2) upper bound", upper, "rayleigh_bound_T2");
        const double d = double_cone_eigen(3, upper).mu;
        add("lambda_1(D_3) upper bound", d, "double_cone_eigen");
        add("a(3) upper bound", decay_exponent(3, d), "decay_exponent");
    } else if (n == 4) {
        const NodalDomainSpec g2{};
        const ContainmentCertificate cert = verify_containment(g2);
        add("T_2 inside G_2 (1 = verified)", cert.passed ? 1.0 : 0.0, "verify_containment");
        if (!cert.passed) throw NumericalError("G2 containment verification failed: " + cert.failure);
        add("lambda_critical", lambda_critical(), "lambda_critical");
        add("lambda_1(T_2) lower bound = lambda_1(G_2)", g2.mu, "perturbed_domain");
        const double t3 = truncated_cone_eigen({3, g2.mu, vertex_angle_delta(3)}).mu;
        add("lambda_1(T_3) lower bound", t3, "truncated_cone_eigen");
        const double d = double_cone_eigen(4, t3).mu;
        add("lambda_1(D_4) lower bound", d, "double_cone_eigen");
        add("a(4) lower bound", decay_exponent(4, d), "decay_exponent");
    } else {
        const auto rows = hat_t_table(n);
        const HatTableRow& row = rows.back();
        add("lambda_1(hat T_" + std::to_string(n - 1) + ")", row.lambda_hat, "hat_t_table");
        const double d = double_cone_eigen(n, row.lambda_hat).mu;
        add("lambda_1(D_" + std::to_string(n) + ") lower bound", d, "double_cone_eigen");
        add("a(" + std::to_string(n) + ") lower bound", row.a_lower, "decay_exponent");
    }
    // Every chain ends with the decay exponent; finiteness is a > 1.
    v.finite = v.chain.back().value > 1.0;
    return v;
}

}  // namespace capture
