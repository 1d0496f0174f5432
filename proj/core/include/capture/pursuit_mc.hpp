#pragma once

// Monte Carlo for the capture of a Brownian prey by n Brownian predators on
// the line. The prey starts at x0, the predators at predator_start; capture is
// the first time x0(t) <= max_j x_j(t). Equivalently, the exit time of an
// (n+1)-dimensional Brownian motion from the cone {x0 >= x_j}.
//
// Path p draws from mt19937_64 seeded with seed_seq{seed_lo, seed_hi, p_lo,
// p_hi}, so results do not depend on thread count or scheduling.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace capture::mc {

struct PursuitConfig {
    int predators = 1;
    double dt = 0.01;
    double t_max = 1000.0;
    std::int64_t paths = 10000;
    std::uint64_t seed = 1;
    double x0 = 1.0;
    double predator_start = 0.0;
    // Brownian-bridge crossing test inside each step.
    bool bridge = true;
    int threads = 1;

    bool operator==(const PursuitConfig&) const = default;
};

void validate(const PursuitConfig& cfg);

struct CaptureSample {
    // Capture time per path; +inf marks a path censored at t_max.
    std::vector<double> times;
    double t_max = 0.0;
    std::int64_t censored = 0;
    std::int64_t steps = 0;  // Euler steps taken over all paths
};

CaptureSample simulate(const PursuitConfig& cfg);

// Mean of min(tau, t_max). Only a lower bound on E[tau] when paths are censored.
double truncated_mean(const CaptureSample& s);

struct SurvivalCurve {
    std::vector<double> times;      // 0, then geometric up to t_max
    std::vector<double> survival;   // fraction of paths with tau > t
    std::vector<double> stderr_;    // binomial standard error
    std::vector<std::int64_t> alive;
    std::int64_t paths = 0;
    std::int64_t censored = 0;

    bool operator==(const SurvivalCurve&) const = default;
};

struct CurveOptions {
    double t_min = 0.0;  // first geometric point; <= 0 means t_max * 1e-4
    int per_decade = 40;
};

SurvivalCurve survival_curve(const CaptureSample& s, const CurveOptions& opts = {});

struct ExponentFit {
    double a_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::pair<double, double> window;
    double r_squared = 0.0;
    int points = 0;

    bool operator==(const ExponentFit&) const = default;
};

struct FitOptions {
    // Empty: [t_max / 100, t_max / 3].
    std::optional<std::pair<double, double>> window;
    int bootstrap = 200;
    std::uint64_t seed = 7;
    double max_relative_stderr = 0.2;
    int min_points = 10;
};

// Least-squares slope of log S against log t over the window, with a
// percentile bootstrap over paths. Throws InsufficientTailData.
ExponentFit fit_tail_exponent(const SurvivalCurve& curve, const FitOptions& opts = {});

// Decay exponent from the best available eigenvalue of the cone's base:
// exact for n <= 2, the sinc-Galerkin estimate for n = 3, the certified
// lower bound for n = 4 and the comparison-domain bound beyond.
double predicted_exponent(int n);

struct KSResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

// Two-sample Kolmogorov-Smirnov test; +inf entries (censored) compare equal.
KSResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace capture::mc
