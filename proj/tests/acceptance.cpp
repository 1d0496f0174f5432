// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "capture/cone_spectra.hpp"
#include "capture/hyperfun.hpp"
#include "capture/oracles.hpp"
#include "capture/perturbed_domain.hpp"
#include "capture/pursuit_mc.hpp"
#include "capture/sinc_galerkin.hpp"

using namespace capture;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the failed sub-checks of one criterion.
struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> failures;
    std::string summary;

    void check(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[200];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

bool report(const Criterion& c, double secs) {
    const bool ok = c.failures.empty();
    std::printf("[%s] #%d %s: %s (%.1f s)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), c.summary.c_str(), secs);
    for (const auto& f : c.failures) std::printf("       failed: %s\n", f.c_str());
    std::fflush(stdout);
    return ok;
}

void table(Criterion& c) {
    const auto t0 = Clock::now();
    const auto rows = hat_t_table(6);
    const double secs = seconds_since(t0);
    const double lam[] = {2.25, 5.00463581, 7.884040724, 10.77018488, 13.6203196};
    const double a[] = {0.75, 0.89614957, 0.99030540, 1.05417466, 1.09882819};
    c.check(rows.size() == 5, "five rows");
    double worst_lam = 0.0, worst_a = 0.0;
    for (std::size_t i = 0; i < rows.size() && i < 5; ++i) {
        worst_lam = std::max(worst_lam, std::abs(rows[i].lambda_hat - lam[i]));
        worst_a = std::max(worst_a, std::abs(rows[i].a_lower - a[i]));
    }
    c.check(worst_lam <= 1e-6, fmt("lambda column error %.2e > 1e-6", worst_lam));
    c.check(worst_a <= 1e-7, fmt("a column error %.2e > 1e-7", worst_a));
    c.check(secs < 1.0, fmt("runtime %.3f s >= 1 s", secs));
    c.summary = fmt("max |dlambda| %.2e, max |da| %.2e, %.3f s", worst_lam, worst_a, secs);
}

void critical(Criterion& c) {
    const double lam = lambda_critical();
    const double res = truncated_cone_eigen({3, lam, vertex_angle_delta(3)}, {1e-13, 64}).mu - 8.0;
    c.check(std::abs(lam - 5.101267527) <= 1e-6, fmt("lambda_cr %.10f", lam));
    c.check(std::abs(res) <= 1e-8, fmt("residual %.2e", res));
    c.summary = fmt("lambda_cr %.10f, residual %.2e", lam, res);
}

void chain(Criterion& c) {
    const double mu3 = truncated_cone_eigen({3, 5.102, vertex_angle_delta(3)}).mu;
    const double mu4 = double_cone_eigen(4, mu3).mu;
    const double a4 = decay_exponent(4, mu4);
    const double a3 = decay_exponent(3, double_cone_eigen(3, 5.102).mu);
    c.check(std::abs(mu3 - 8.00087815) <= 1e-6, fmt("mu(3, 5.102, delta(3)) = %.10f", mu3));
    c.check(std::abs(mu4 - 10.001024501) <= 1e-6, fmt("double cone eigenvalue %.10f", mu4));
    c.check(std::abs(a4 - 1.00007318) <= 1e-7, fmt("a(4) = %.10f", a4));
    c.check(std::abs(a3 - 0.90671950) <= 1e-7, fmt("a(3) = %.10f", a3));
    c.summary = fmt("mu3 %.9f, mu4 %.9f, a(4) %.9f", mu3, mu4, a4) + fmt(", a(3) %.9f", a3);
}

void oracle_equivalence(Criterion& c) {
    double worst = 0.0;
    for (int n : {2, 3, 4})
        for (double lambda : {1.0, 2.25, 5.102, 8.0})
            for (double r0 : {1.8, 2.0, vertex_angle_delta(2), vertex_angle_delta(3)}) {
                const double mu = truncated_cone_eigen({n, lambda, r0}).mu;
                const double ref = oracles::ode_shooting_eigen({n, lambda, r0});
                worst = std::max(worst, std::abs(mu - ref));
            }
    c.check(worst <= 1e-5, fmt("cone vs shooting %.2e > 1e-5", worst));

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ab(-3.0, 5.0), cc(0.5, 6.0), zz(0.0, 0.9);
    double worst_2f1 = 0.0;
    for (int i = 0; i < 100; ++i) {
        const HyperParams p{ab(rng), ab(rng), cc(rng), zz(rng)};
        const double ref = std::stod(oracles::highprec_2f1(p, 30));
        worst_2f1 = std::max(worst_2f1, std::abs(gauss_2f1(p) - ref) / std::max(1.0, std::abs(ref)));
    }
    c.check(worst_2f1 <= 1e-12, fmt("2F1 vs 50-digit %.2e > 1e-12", worst_2f1));
    c.summary = fmt("48-point grid max diff %.2e, 100 draws max 2F1 diff %.2e", worst, worst_2f1);
}

void rayleigh(Criterion& c) {
    const double q = rayleigh_bound_T2();
    const double closed = rayleigh_bound_T2_closed_form();
    c.check(std::abs(q - closed) <= 1e-3, fmt("quotient %.8f vs %.8f", q, closed));
    c.check(q < 6.0, fmt("quotient %.8f not below 6", q));
    c.summary = fmt("quotient %.8f, closed form %.8f", q, closed);
}

void g2(Criterion& c) {
    const NodalDomainSpec spec{};
    const auto coarse = eigen_residual_check(spec, 200, 2e-3);
    const auto fine = eigen_residual_check(spec, 200, 1e-3);
    const double ratio = coarse.max_residual / fine.max_residual;
    c.check(ratio >= 3.5 && ratio <= 4.5, fmt("residual ratio %.3f", ratio));

    const auto cert = verify_containment(spec, 2.0);
    c.check(cert.passed, "containment certificate for c = 0.0003: " + cert.failure);
    for (double theta : kArcCheckpoints)
        c.check(h_on_arc(spec, theta) > 0.0, fmt("H <= 0 at checkpoint theta = %.6f", theta));

    NodalDomainSpec bad = spec;
    bad.c = 0.1;
    c.check(!verify_containment(bad, 2.0).passed, "c = 0.1 unexpectedly passes");
    c.summary = fmt("residual ratio %.3f, %g intervals, c = 0.1 rejected", ratio,
                    static_cast<double>(cert.intervals.size()));
}

void sinc_galerkin(Criterion& c) {
    const auto t0 = Clock::now();
    const auto rows = sinc::convergence_study({16, 1024});
    const double secs = seconds_since(t0);
    const double d16 = rows[0].estimate.lambda_upper, d1024 = rows[1].estimate.lambda_upper;
    const double fd = oracles::fd_triangle_eigen(160).value;
    c.check(d1024 >= 5.10 && d1024 <= 5.21, fmt("dim 1024 estimate %.6f outside [5.10, 5.21]", d1024));
    c.check(std::abs(d1024 - 5.159) <= 0.05, fmt("dim 1024 estimate %.6f not within 0.05 of 5.159", d1024));
    c.check(std::abs(d16 - 5.95) <= 0.2, fmt("dim 16 estimate %.6f", d16));
    c.check(std::abs(d1024 - fd) <= 0.02, fmt("dim 1024 %.6f vs FD %.6f", d1024, fd));
    c.check(secs <= 600.0, fmt("runtime %.1f s", secs));
    c.summary = fmt("dim16 %.6f, dim1024 %.6f, FD %.6f", d16, d1024, fd) + fmt(", study %.1f s", secs);
}

void monte_carlo(Criterion& c) {
    const auto t0 = Clock::now();
    const double centre[] = {0.50, 0.75, 0.9128, 1.0057};
    const double band[] = {0.05, 0.07, 0.10, 0.12};
    std::string fits;
    for (int n = 1; n <= 4; ++n) {
        mc::PursuitConfig cfg;
        cfg.predators = n;
        cfg.paths = 200000;
        cfg.t_max = 1000.0;
        cfg.seed = 1000 + n;
        const auto fit = mc::fit_tail_exponent(mc::survival_curve(mc::simulate(cfg)));
        c.check(std::abs(fit.a_hat - centre[n - 1]) <= band[n - 1],
                fmt("n = %g fit %.4f", n, fit.a_hat));
        fits += fmt(" %.4f", fit.a_hat);
    }

    mc::PursuitConfig base;
    base.predators = 2;
    base.paths = 20000;
    base.t_max = 100.0;
    base.seed = 77;
    auto moved = base;
    moved.seed = 78;
    moved.x0 += 7.5;
    moved.predator_start += 7.5;
    const double p_translate = mc::ks_two_sample(mc::simulate(base).times, mc::simulate(moved).times).p_value;
    c.check(p_translate > 0.01, fmt("translation KS p = %.4f", p_translate));

    auto scaled = base;
    scaled.predators = 3;
    base.predators = 3;
    scaled.seed = 79;
    scaled.x0 = 2.0;
    scaled.dt *= 4.0;
    scaled.t_max *= 4.0;
    auto times = mc::simulate(scaled).times;
    for (double& t : times) t /= 4.0;
    const double p_scale = mc::ks_two_sample(mc::simulate(base).times, times).p_value;
    c.check(p_scale > 0.01, fmt("scaling KS p = %.4f", p_scale));

    const double secs = seconds_since(t0);
    c.check(secs <= 900.0, fmt("runtime %.1f s", secs));
    c.summary = "fits n=1..4" + fits + fmt(", KS p translation %.3f scaling %.3f", p_translate, p_scale);
}

int run_binary(const char* path) {
    const int s = std::system((std::string(path) + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

void property_suites(Criterion& c) {
    // Each module's invariants live in its unit test binary.
    const std::vector<std::pair<const char*, const char*>> suites{
        {"hyperfun", CAPTURE_TEST_HYPERFUN},       {"cone_spectra", CAPTURE_TEST_CONE_SPECTRA},
        {"perturbed_domain", CAPTURE_TEST_PERTURBED}, {"sinc_galerkin", CAPTURE_TEST_SINC},
        {"oracles", CAPTURE_TEST_ORACLES},          {"pursuit_mc", CAPTURE_TEST_PURSUIT_MC},
        {"cli", CAPTURE_TEST_CLI}};
    int passed = 0;
    for (const auto& [name, path] : suites) {
        const int code = run_binary(path);
        c.check(code == 0, std::string(name) + " suite exited " + std::to_string(code));
        passed += code == 0;
    }
    c.summary = std::to_string(passed) + " of " + std::to_string(suites.size()) + " module suites pass";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
        {"comparison-domain table", table},
        {"critical eigenvalue", critical},
        {"n = 4 finiteness chain", chain},
        {"oracle equivalence", oracle_equivalence},
        {"Rayleigh bound for T2", rayleigh},
        {"G2 verification", g2},
        {"sinc-Galerkin", sinc_galerkin},
        {"Monte Carlo exponents", monte_carlo},
        {"property suites", property_suites},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion c{static_cast<int>(i + 1), criteria[i].first, {}, {}};
        const auto t0 = Clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        failed += !report(c, seconds_since(t0));
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
