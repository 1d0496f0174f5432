#include "capture/pursuit_mc.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "capture/cone_spectra.hpp"
#include "capture/errors.hpp"
#include "capture/sinc_galerkin.hpp"

namespace capture::mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t path) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
    return std::mt19937_64(seq);
}

// One path; returns the capture time or +inf, and adds the steps taken.
double run_path(const PursuitConfig& cfg, std::int64_t max_steps, std::uint64_t path,
                std::vector<double>& pred, std::vector<double>& gap, std::int64_t& steps) {
    auto rng = path_engine(cfg.seed, path);
    boost::random::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    const double sd = std::sqrt(cfg.dt);
    const double inv_dt = 1.0 / cfg.dt;
    double prey = cfg.x0;
    std::fill(pred.begin(), pred.end(), cfg.predator_start);
    for (std::size_t j = 0; j < pred.size(); ++j) gap[j] = prey - pred[j];

    for (std::int64_t k = 1; k <= max_steps; ++k) {
        prey += sd * normal(rng);
        bool hit = false;
        double survive = 1.0;
        for (std::size_t j = 0; j < pred.size(); ++j) {
            pred[j] += sd * normal(rng);
            const double d = prey - pred[j];
            if (d <= 0.0) {
                hit = true;
            } else if (cfg.bridge) {
                // The gap is a Brownian motion with variance 2 dt per step.
                const double e = gap[j] * d * inv_dt;
                if (e < 40.0) survive *= 1.0 - std::exp(-e);
            }
            gap[j] = d;
        }
        if (!hit && survive < 1.0) hit = unit(rng) >= survive;
        if (hit) {
            steps += k;
            return k * cfg.dt;
        }
    }
    steps += max_steps;
    return kInf;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double* r2) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (r2) *r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return sxy / sxx;
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

void validate(const PursuitConfig& cfg) {
    if (cfg.predators < 1) throw std::invalid_argument("predators must be >= 1");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(cfg.t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    if (cfg.t_max / cfg.dt > 1e8) throw std::invalid_argument("t_max / dt exceeds 1e8 steps per path");
    if (cfg.paths < 1) throw std::invalid_argument("paths must be >= 1");
    if (!(cfg.x0 > cfg.predator_start)) throw std::invalid_argument("prey must start above the predators");
    if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");
}

CaptureSample simulate(const PursuitConfig& cfg) {
    validate(cfg);
    CaptureSample out;
    out.t_max = cfg.t_max;
    out.times.assign(static_cast<std::size_t>(cfg.paths), kInf);
    const auto max_steps = static_cast<std::int64_t>(std::floor(cfg.t_max / cfg.dt + 1e-9));

    const int workers = static_cast<int>(std::min<std::int64_t>(cfg.threads, cfg.paths));
    std::vector<std::int64_t> steps(static_cast<std::size_t>(workers), 0);
    auto work = [&](int w) {
        std::vector<double> pred(static_cast<std::size_t>(cfg.predators));
        std::vector<double> gap(pred.size());
        const std::int64_t lo = cfg.paths * w / workers, hi = cfg.paths * (w + 1) / workers;
        for (std::int64_t p = lo; p < hi; ++p)
            out.times[static_cast<std::size_t>(p)] =
                run_path(cfg, max_steps, static_cast<std::uint64_t>(p), pred, gap, steps[static_cast<std::size_t>(w)]);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    out.steps = std::accumulate(steps.begin(), steps.end(), std::int64_t{0});
    out.censored = std::count(out.times.begin(), out.times.end(), kInf);
    return out;
}

double truncated_mean(const CaptureSample& s) {
    if (s.times.empty()) return 0.0;
    double sum = 0.0;
    for (double t : s.times) sum += std::min(t, s.t_max);
    return sum / static_cast<double>(s.times.size());
}

SurvivalCurve survival_curve(const CaptureSample& s, const CurveOptions& opts) {
    if (!(s.t_max > 0.0)) throw std::invalid_argument("sample has no horizon");
    if (opts.per_decade < 1) throw std::invalid_argument("per_decade must be >= 1");
    const double t_min = opts.t_min > 0.0 ? opts.t_min : s.t_max * 1e-4;
    if (!(t_min < s.t_max)) throw std::invalid_argument("t_min must lie below t_max");

    SurvivalCurve c;
    c.paths = static_cast<std::int64_t>(s.times.size());
    c.censored = s.censored;
    c.times.push_back(0.0);
    const int count = static_cast<int>(std::ceil(std::log10(s.t_max / t_min) * opts.per_decade));
    for (int i = 0; i < count; ++i) c.times.push_back(t_min * std::pow(10.0, static_cast<double>(i) / opts.per_decade));
    c.times.push_back(s.t_max);

    std::vector<double> sorted = s.times;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(std::max<std::int64_t>(c.paths, 1));
    for (double t : c.times) {
        const auto alive = static_cast<std::int64_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
        const double surv = c.paths ? static_cast<double>(alive) / n : 1.0;
        c.alive.push_back(alive);
        c.survival.push_back(surv);
        c.stderr_.push_back(std::sqrt(surv * (1.0 - surv) / n));
    }
    return c;
}

ExponentFit fit_tail_exponent(const SurvivalCurve& curve, const FitOptions& opts) {
    if (curve.times.size() < 2 || curve.paths < 1) throw InsufficientTailData("empty survival curve");
    const double t_max = curve.times.back();
    const auto window = opts.window.value_or(std::pair{t_max / 100.0, t_max / 3.0});

    std::vector<std::size_t> use;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        const double t = curve.times[i];
        if (t < window.first || t > window.second) continue;
        if (curve.survival[i] > 0.0 && curve.stderr_[i] < opts.max_relative_stderr * curve.survival[i]) use.push_back(i);
    }
    if (static_cast<int>(use.size()) < opts.min_points)
        throw InsufficientTailData("only " + std::to_string(use.size()) +
                                   " grid points in the window have usable survival estimates");

    ExponentFit fit;
    fit.window = window;
    fit.points = static_cast<int>(use.size());
    std::vector<double> x, y;
    for (std::size_t i : use) {
        x.push_back(std::log(curve.times[i]));
        y.push_back(std::log(curve.survival[i]));
    }
    fit.a_hat = -fit_slope(x, y, &fit.r_squared);
    fit.ci_low = fit.ci_high = fit.a_hat;
    if (opts.bootstrap < 2) return fit;

    // Resampling paths only moves them between grid cells, so each path is
    // represented by its cell: the first grid index at which it is dead.
    std::vector<std::uint32_t> cell;
    cell.reserve(static_cast<std::size_t>(curve.paths));
    std::int64_t prev = curve.paths;
    for (std::size_t i = 0; i < curve.alive.size(); ++i) {
        cell.insert(cell.end(), static_cast<std::size_t>(prev - curve.alive[i]), static_cast<std::uint32_t>(i));
        prev = curve.alive[i];
    }
    cell.insert(cell.end(), static_cast<std::size_t>(prev), static_cast<std::uint32_t>(curve.alive.size()));

    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, cell.size() - 1);
    std::vector<std::int64_t> hist(curve.alive.size() + 1);
    std::vector<double> slopes;
    for (int b = 0; b < opts.bootstrap; ++b) {
        std::fill(hist.begin(), hist.end(), 0);
        for (std::size_t k = 0; k < cell.size(); ++k) ++hist[cell[pick(rng)]];
        // alive at i = paths whose cell index exceeds i.
        std::vector<std::int64_t> alive(curve.alive.size());
        std::int64_t dead = 0;
        for (std::size_t i = 0; i < alive.size(); ++i) {
            dead += hist[i];
            alive[i] = curve.paths - dead;
        }
        std::vector<double> bx, by;
        for (std::size_t i : use) {
            if (alive[i] <= 0) continue;
            bx.push_back(std::log(curve.times[i]));
            by.push_back(std::log(static_cast<double>(alive[i]) / static_cast<double>(curve.paths)));
        }
        if (bx.size() >= 2) slopes.push_back(-fit_slope(bx, by, nullptr));
    }
    if (slopes.size() >= 2) {
        fit.ci_low = std::min(fit.a_hat, quantile(slopes, 0.025));
        fit.ci_high = std::max(fit.a_hat, quantile(slopes, 0.975));
    }
    return fit;
}

double predicted_exponent(int n) {
    if (n < 1) throw std::invalid_argument("predators must be >= 1");
    if (n == 1) return decay_exponent(1, 1.0);
    if (n == 2) return decay_exponent(2, double_cone_eigen(2, 9.0 / 4.0).mu);
    if (n == 3) {
        static const double lambda_t2 = sinc::convergence_study({1024}).front().estimate.lambda_upper;
        return decay_exponent(3, double_cone_eigen(3, lambda_t2).mu);
    }
    return verdict(n).chain.back().value;
}

KSResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs two non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double t = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == t) ++i;
        while (j < b.size() && b[j] == t) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    // Asymptotic Kolmogorov distribution with the small-sample correction.
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lam = (ne + 0.12 + 0.11 / ne) * d;
    double p = 0.0;
    if (lam < 0.2) {
        p = 1.0;
    } else {
        for (int k = 1; k <= 100; ++k) {
            const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lam * lam);
            p += term;
            if (std::abs(term) < 1e-12) break;
        }
    }
    return {d, std::clamp(p, 0.0, 1.0)};
}

}  // namespace capture::mc
