#include "capture/hyperfun.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <utility>
#include <stdexcept>

#include "capture/errors.hpp"

namespace capture {

namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && std::nearbyint(x) == x;
}

// Upper bound on |t_{j+1} / t_j| valid for every j >= k. Each factor is
// monotone in j, so the bound itself decreases with k.
double ratio_bound(const HyperParams& p, int k) {
    const double j = static_cast<double>(k);
    double den = 1.0;
    if (p.gamma < 0.0) {
        if (j <= -p.gamma) return INFINITY;
        den = 1.0 + p.gamma / j;
    }
    return p.z * (1.0 + std::abs(p.alpha) / j) * (1.0 + std::abs(p.beta) / j) / den;
}

// Plain series with a certified tail bound.
SeriesValue direct_series(const HyperParams& p, const SeriesOptions& opts) {
    // Neumaier-compensated summation.
    double sum = 1.0;
    double comp = 0.0;
    double term = 1.0;
    if (p.z == 0.0) return {1.0, 1, 0.0};

    for (int k = 0; k < opts.max_terms; ++k) {
        const double kd = static_cast<double>(k);
        term *= (p.alpha + kd) * (p.beta + kd) / ((p.gamma + kd) * (kd + 1.0)) * p.z;
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;

        if (term == 0.0) return {sum + comp, k + 2, 0.0};  // terminating series

        // term is t_{k+1}; bound the tail t_{k+2} + t_{k+3} + ...
        const double rho = ratio_bound(p, k + 1);
        if (rho < 1.0) {
            const double tail = std::abs(term) * rho / (1.0 - rho);
            if (tail <= opts.abs_tol) return {sum + comp, k + 2, tail};
        }
    }
    throw SeriesNotConverged(sum + comp, opts.max_terms);
}

// Taylor re-expansion of the hypergeometric equation
//   x(1-x) y'' + [c - (a+b+1) x] y' - ab y = 0
// about x_c, summed at x_c + step. Returns (y, y') at the new point.
std::pair<double, double> reexpand(const HyperParams& p, double xc, double y0, double y1,
                                   double step, int max_terms, int& terms) {
    const double p0 = xc * (1.0 - xc);
    const double p1 = 1.0 - 2.0 * xc;
    const double q0 = p.gamma - (p.alpha + p.beta + 1.0) * xc;
    const double q1 = -(p.alpha + p.beta + 1.0);
    const double r0 = -p.alpha * p.beta;

    // c_k are Taylor coefficients times step^k.
    double c_prev = y0;
    double c_cur = y1 * step;
    double value = c_prev + c_cur;
    double deriv = c_cur;  // step * y'(x_c + step), accumulated as sum k c_k
    double scale = std::abs(value) + std::abs(deriv);
    for (int k = 0; k < max_terms; ++k) {
        const double kd = static_cast<double>(k);
        const double c_next =
            -((p1 * kd * (kd + 1.0) + q0 * (kd + 1.0)) * c_cur * step +
              (-kd * (kd - 1.0) + q1 * kd + r0) * c_prev * step * step) /
            (p0 * (kd + 2.0) * (kd + 1.0));
        value += c_next;
        deriv += (kd + 2.0) * c_next;
        scale = std::max(scale, std::abs(value) + std::abs(deriv));
        ++terms;
        if (std::abs(c_next) * (kd + 3.0) <= 1e-18 * scale && std::abs(c_cur) * (kd + 2.0) <= 1e-18 * scale)
            return {value, deriv / step};
        c_prev = c_cur;
        c_cur = c_next;
    }
    throw SeriesNotConverged(value, terms);
}

// Direct series up to kContinuationStart, then hops toward z, each hop at most
// half the distance to the singular point x = 1.
constexpr double kContinuationStart = 0.9;

SeriesValue continued(const HyperParams& p, const SeriesOptions& opts) {
    HyperParams start = p;
    start.z = 0.5;
    const SeriesValue y = direct_series(start, {opts.abs_tol * 1e-3, opts.max_terms});
    HyperParams deriv_params{p.alpha + 1.0, p.beta + 1.0, p.gamma + 1.0, 0.5};
    const SeriesValue dy = direct_series(deriv_params, {opts.abs_tol * 1e-3, opts.max_terms});

    int terms = y.terms + dy.terms;
    double x = 0.5;
    double value = y.value;
    double slope = p.alpha * p.beta / p.gamma * dy.value;
    while (x < p.z) {
        const double step = std::min(p.z - x, 0.5 * (1.0 - x));
        std::tie(value, slope) = reexpand(p, x, value, slope, step, opts.max_terms, terms);
        x = (step == p.z - x) ? p.z : x + step;
    }
    return {value, terms, opts.abs_tol};
}

}  // namespace

std::optional<const char*> validate(const HyperParams& p) {
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.gamma) ||
        !std::isfinite(p.z))
        return "non-finite parameter";
    if (is_nonpositive_integer(p.gamma)) return "gamma is zero or a negative integer";
    if (!(p.z >= 0.0 && p.z < 1.0)) return "argument z must lie in [0, 1)";
    return std::nullopt;
}

SeriesValue gauss_2f1_series(const HyperParams& p, const SeriesOptions& opts) {
    if (auto why = validate(p)) throw std::invalid_argument(*why);
    if (p.z <= kContinuationStart) return direct_series(p, opts);
    return continued(p, opts);
}

}  // namespace capture
