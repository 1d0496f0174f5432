#pragma once

// Gauss hypergeometric function 2F1(a, b; c; z) for real arguments 0 <= z < 1.
//
// Up to z = 0.9 the standard series is summed directly,
//
//   2F1(a, b; c; z) = sum_k (a)_k (b)_k / ((c)_k k!) z^k,
//
// which solves z(1-z)y'' + [c - (a+b+1)z]y' - ab y = 0. Some printed sources
// place b in the denominator Pochhammer symbol and drop the k!; that form does
// not solve the equation above and is not what is computed here.
//
// Beyond z = 0.9 the value is continued from z = 1/2 by re-expanding the
// solution of the equation in Taylor series, each hop covering half of the
// remaining distance to the singular point z = 1.

#include <optional>

namespace capture {

struct HyperParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 1.0;
    double z = 0.0;
};

struct SeriesOptions {
    double abs_tol = 1e-13;  // bound on the neglected tail
    int max_terms = 10000;
};

struct SeriesValue {
    double value = 0.0;
    int terms = 0;           // number of series terms summed
    double tail_bound = 0.0; // certified bound on |neglected tail|
};

// Throws std::invalid_argument when gamma is zero or a negative integer or
// z is outside [0, 1), and SeriesNotConverged when max_terms is exhausted.
SeriesValue gauss_2f1_series(const HyperParams& p, const SeriesOptions& opts = {});

inline double gauss_2f1(const HyperParams& p, const SeriesOptions& opts = {}) {
    return gauss_2f1_series(p, opts).value;
}

// Returns the reason the parameters are rejected, if any.
std::optional<const char*> validate(const HyperParams& p);

}  // namespace capture
