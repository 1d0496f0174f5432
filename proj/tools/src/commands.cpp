#include "capture/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "capture/cli/figures.hpp"
#include "capture/cli/json_io.hpp"
#include "capture/errors.hpp"

namespace capture::cli {

namespace {

using nlohmann::json;

std::string strf(const char* format, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, format);
    std::vsnprintf(buf, sizeof buf, format, ap);
    va_end(ap);
    return buf;
}

struct Globals {
    std::string out;
    std::string format = "text";
    std::uint64_t seed = 1;
    double tol = 0.0;  // 0 keeps each solver's default
    int threads = 1;
};

struct Provenance {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;

    json to_json() const {
        return {{"tool", "capture"}, {"version", kVersion}, {"command", command}, {"config_hash", config_hash},
                {"seed", seed}};
    }
    std::string comment() const {
        return "# capture " + std::string(kVersion) + " command=" + command + " config_hash=" + config_hash +
               " seed=" + std::to_string(seed) + "\n";
    }
};

// One rendered result plus the exit code it implies.
struct Output {
    std::string body;
    int code = kOk;
};

std::string ext_for(const std::string& format) { return format == "text" ? "txt" : format; }

void require_format(const std::string& format, std::initializer_list<const char*> allowed, const std::string& cmd) {
    for (const char* f : allowed)
        if (format == f) return;
    throw std::invalid_argument("format '" + format + "' is not supported by '" + cmd + "'");
}

std::string json_doc(const Provenance& p, json result) {
    json doc{{"provenance", p.to_json()}, {"result", std::move(result)}};
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- commands

Output cmd_table(int max_n, const Globals& g, const Provenance& p) {
    require_format(g.format, {"text", "json", "csv"}, "table");
    const auto rows = hat_t_table(max_n);
    if (g.format == "json") return {json_doc(p, rows)};
    std::string s = p.comment();
    if (g.format == "csv") {
        s += "n,lambda_hat,a\n";
        for (const auto& r : rows) s += strf("%d,%.12g,%.12g\n", r.n, r.lambda_hat, r.a_lower);
        return {s};
    }
    s += " n   lambda_1(T^_{n-1})    a(n)\n";
    for (const auto& r : rows) s += strf("%2d   %16.9f   %10.8f\n", r.n, r.lambda_hat, r.a_lower);
    return {s};
}

Output cmd_eigen(int n, double lambda, double r0, const Globals& g, const Provenance& p) {
    require_format(g.format, {"text", "json"}, "eigen");
    RootOptions opts;
    if (g.tol > 0.0) opts.mu_tol = g.tol;
    const EigenResult r = truncated_cone_eigen({n, lambda, r0}, opts);
    if (g.format == "json") return {json_doc(p, r)};
    std::string s = p.comment();
    s += strf("mu       %.12f\n", r.mu);
    s += strf("m        %.12f\n", r.m);
    s += strf("bracket  [%.12f, %.12f]\n", r.bracket.lo, r.bracket.hi);
    s += strf("evals    %d\n", r.evals);
    s += r.closed_form ? "closed form (r0 = pi)\n" : "root of the truncation function\n";
    return {s};
}

Output cmd_lambda_cr(const Globals& g, const Provenance& p) {
    require_format(g.format, {"text", "json"}, "lambda-cr");
    const double lam = g.tol > 0.0 ? lambda_critical(g.tol) : lambda_critical();
    RootOptions opts;
    opts.mu_tol = 1e-13;
    const double residual = truncated_cone_eigen({3, lam, vertex_angle_delta(3)}, opts).mu - 8.0;
    if (g.format == "json") return {json_doc(p, {{"lambda_cr", lam}, {"residual", residual}})};
    return {p.comment() + strf("lambda_cr  %.12f\nresidual   %.3e\n", lam, residual)};
}

Output cmd_verify_g2(double safety, double c, double mu, const Globals& g, const Provenance& p) {
    require_format(g.format, {"text", "json"}, "verify-g2");
    NodalDomainSpec spec;
    spec.mu = mu;
    spec.c = c;
    const ContainmentCertificate cert = verify_containment(spec, safety);
    const int code = cert.passed ? kOk : kVerificationFailed;
    if (g.format == "json") return {json_doc(p, cert), code};
    std::string s = p.comment();
    s += strf("mu %.6g  c %.6g  safety %.3g\n", mu, c, safety);
    s += std::string("method: ") + ContainmentCertificate::kMethod + "\n";
    for (const auto& cp : cert.checkpoints) s += strf("H(theta = %.6f) = %.9f\n", cp.theta, cp.h);
    s += strf("derivative bound %.6g, %zu intervals\n", cert.derivative_bound, cert.intervals.size());
    if (cert.passed) {
        s += "PASSED: T2 lies inside G2\n";
    } else {
        s += "FAILED: " + cert.failure;
        if (cert.failed_at) s += strf(" (theta = %.9f)", *cert.failed_at);
        s += "\n";
    }
    return {s, code};
}

Output cmd_sinc(const std::vector<int>& dims, double h, int quad_nodes, const Globals& g, const Provenance& p) {
    require_format(g.format, {"text", "json", "csv"}, "sinc");
    sinc::StudyOptions opts;
    opts.h = h;
    opts.assembly.quad_half = quad_nodes;
    if (g.tol > 0.0) opts.power.tol = g.tol;
    const auto rows = sinc::convergence_study(dims, opts);
    if (g.format == "json") return {json_doc(p, rows)};
    std::string s = p.comment();
    if (g.format == "csv") {
        s += "dim,n,h,lambda_upper,mu_m,iterations,residual\n";
        for (const auto& r : rows)
            s += strf("%d,%d,%.12g,%.15g,%.15g,%d,%.3e\n", r.dim, r.n, r.h, r.estimate.lambda_upper, r.estimate.mu_m,
                      r.estimate.iterations, r.estimate.residual);
        return {s};
    }
    s += "  dim     n        h        lambda_upper   iterations\n";
    for (const auto& r : rows)
        s += strf("%5d  %4d  %9.6f  %15.10f   %6d\n", r.dim, r.n, r.h, r.estimate.lambda_upper, r.estimate.iterations);
    return {s};
}

Output cmd_mc(const mc::PursuitConfig& cfg, const Globals& g, const Provenance& p) {
    require_format(g.format, {"text", "json", "csv"}, "mc");
    const mc::CaptureSample sample = mc::simulate(cfg);
    const mc::SurvivalCurve curve = mc::survival_curve(sample);
    std::string s = p.comment();
    if (g.format == "csv") {
        s += "t,survival,stderr,alive\n";
        for (std::size_t i = 0; i < curve.times.size(); ++i)
            s += strf("%.10g,%.10g,%.6g,%lld\n", curve.times[i], curve.survival[i], curve.stderr_[i],
                      static_cast<long long>(curve.alive[i]));
        return {s};
    }
    const mc::ExponentFit fit = mc::fit_tail_exponent(curve);
    const double predicted = mc::predicted_exponent(cfg.predators);
    const double tmean = mc::truncated_mean(sample);
    if (g.format == "json")
        return {json_doc(p, {{"config", cfg},
                             {"fit", fit},
                             {"predicted", predicted},
                             {"truncated_mean", tmean},
                             {"censored", sample.censored},
                             {"curve", curve}})};
    s += strf("predators %d  paths %lld  dt %g  t_max %g  bridge %s\n", cfg.predators,
              static_cast<long long>(cfg.paths), cfg.dt, cfg.t_max, cfg.bridge ? "on" : "off");
    s += strf("fitted exponent     %.4f  [%.4f, %.4f]  window [%g, %g]  %d points\n", fit.a_hat, fit.ci_low,
              fit.ci_high, fit.window.first, fit.window.second, fit.points);
    s += strf("predicted exponent  %.4f\n", predicted);
    s += strf("censored at t_max   %lld of %lld\n", static_cast<long long>(sample.censored),
              static_cast<long long>(cfg.paths));
    s += strf("truncated mean at t_max = %g: %.4f\n", cfg.t_max, tmean);
    return {s};
}

Output cmd_verdict(int n, const Globals& g, const Provenance& p) {
    require_format(g.format, {"text", "json"}, "verdict");
    const Verdict v = verdict(n);
    if (g.format == "json") return {json_doc(p, v)};
    std::string s = p.comment();
    for (const auto& step : v.chain) s += strf("%-28s %.10f   ", step.quantity.c_str(), step.value) + step.source + "\n";
    s += strf("n = %d: expected capture time is %s\n", n, v.finite ? "finite" : "infinite");
    return {s};
}

std::filesystem::path default_dir() {
    if (const char* dir = std::getenv("CAPTURE_OUT_DIR"); dir && *dir) return dir;
    return {};
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write " + path.string());
    f << body;
}

void emit(const Output& o, const std::string& command, const Globals& g, std::ostream& out) {
    std::filesystem::path target;
    if (!g.out.empty())
        target = g.out;
    else if (auto dir = default_dir(); !dir.empty())
        target = dir / (command + "." + ext_for(g.format));
    if (target.empty())
        out << o.body;
    else
        write_file(target, o.body);
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eigenvalues of spherical cones and Brownian pursuit capture times", "capture"};
    // No -h: the sinc step is --h.
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "TOML/INI config file; flags override its values");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--out", g.out, "Output file (directory for 'figures'); default stdout or $CAPTURE_OUT_DIR");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "svg", "text"}));
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--tol", g.tol, "Tolerance override for root finders and iterations")->check(CLI::NonNegativeNumber);
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

    int table_max_n = 6;
    auto* table = app.add_subcommand("table", "Comparison-domain eigenvalues and decay exponents");
    table->add_option("max_n,--max-n", table_max_n, "Largest sphere dimension")->check(CLI::Range(2, 60));

    int eigen_n = 2;
    double eigen_lambda = 2.25, eigen_r0 = std::numbers::pi;
    auto* eigen = app.add_subcommand("eigen", "First Dirichlet eigenvalue of a (truncated) cone");
    eigen->add_option("--n", eigen_n, "Sphere dimension")->check(CLI::Range(2, 1000));
    eigen->add_option("--lambda", eigen_lambda, "Base eigenvalue in S^{n-1}")->check(CLI::PositiveNumber);
    eigen->add_option("--r0", eigen_r0, "Truncation radius in (0, pi]");

    auto* lcr = app.add_subcommand("lambda-cr", "Critical base eigenvalue for n = 4");

    double g2_safety = 2.0, g2_c = 0.0003, g2_mu = 5.102;
    auto* g2 = app.add_subcommand("verify-g2", "Certify that T2 lies in the nodal domain G2");
    g2->add_option("--safety", g2_safety, "Derivative bound safety factor")->check(CLI::Range(1.0, 100.0));
    g2->add_option("--c", g2_c, "Mode mixing coefficient");
    g2->add_option("--mu", g2_mu, "Eigenvalue of the superposed modes")->check(CLI::PositiveNumber);

    std::vector<int> sinc_dims{16, 64, 256};
    double sinc_h = 0.0;
    int sinc_quad = 0;
    auto* sincc = app.add_subcommand("sinc", "Sinc-Galerkin convergence study for lambda_1(T2)");
    sincc->add_option("--dims", sinc_dims, "Matrix dimensions (perfect squares of even numbers)")->delimiter(',');
    sincc->add_option("--h", sinc_h, "Basis step; 0 picks the default for each size")->check(CLI::NonNegativeNumber);
    sincc->add_option("--quad-nodes", sinc_quad, "Quadrature half-range; 0 uses the basis half-range")
        ->check(CLI::NonNegativeNumber);

    mc::PursuitConfig mcc;
    mcc.paths = 20000;
    auto* mcs = app.add_subcommand("mc", "Monte Carlo survival curve and tail exponent");
    mcs->add_option("--predators", mcc.predators, "Number of predators")->check(CLI::Range(1, 16));
    mcs->add_option("--paths", mcc.paths, "Simulated paths")->check(CLI::PositiveNumber);
    mcs->add_option("--dt", mcc.dt, "Time step")->check(CLI::PositiveNumber);
    mcs->add_option("--t-max", mcc.t_max, "Censoring time")->check(CLI::PositiveNumber);
    mcs->add_option("--x0", mcc.x0, "Initial prey position");
    mcs->add_option("--predator-start", mcc.predator_start, "Initial predator position");
    bool no_bridge = false;
    mcs->add_flag("--no-bridge", no_bridge, "Disable the Brownian-bridge crossing correction");

    int verdict_n = 4;
    auto* ver = app.add_subcommand("verdict", "Finiteness chain for n predators");
    ver->add_option("n,--n", verdict_n, "Number of predators")->check(CLI::Range(1, 60));

    auto* figs = app.add_subcommand("figures", "Write figure1.svg, figure2.svg and figure3.svg");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    Provenance prov{command, strf("%016llx", static_cast<unsigned long long>(fnv1a(app.config_to_str(true, false)))),
                    g.seed};

    try {
        if (figs->parsed()) {
            if (g.format != "text" && g.format != "svg")
                throw std::invalid_argument("'figures' only writes svg");
            std::filesystem::path dir = g.out.empty() ? default_dir() : std::filesystem::path(g.out);
            if (dir.empty()) dir = ".";
            for (const Figure& f : render_figures()) {
                std::string svg = f.svg;
                // Provenance as an XML comment after the root element.
                const auto at = svg.find('\n') + 1;
                svg.insert(at, "<!-- capture " + std::string(kVersion) + " command=figures config_hash=" +
                                   prov.config_hash + " seed=" + std::to_string(g.seed) + " -->\n");
                write_file(dir / f.file, svg);
                out << (dir / f.file).string() << "\n";
            }
            return kOk;
        }

        Output o;
        if (table->parsed()) {
            o = cmd_table(table_max_n, g, prov);
        } else if (eigen->parsed()) {
            o = cmd_eigen(eigen_n, eigen_lambda, eigen_r0, g, prov);
        } else if (lcr->parsed()) {
            o = cmd_lambda_cr(g, prov);
        } else if (g2->parsed()) {
            o = cmd_verify_g2(g2_safety, g2_c, g2_mu, g, prov);
        } else if (sincc->parsed()) {
            o = cmd_sinc(sinc_dims, sinc_h, sinc_quad, g, prov);
        } else if (mcs->parsed()) {
            mcc.seed = g.seed;
            mcc.threads = g.threads;
            mcc.bridge = !no_bridge;
            o = cmd_mc(mcc, g, prov);
        } else {
            o = cmd_verdict(verdict_n, g, prov);
        }
        emit(o, command, g, out);
        return o.code;
    } catch (const NumericalError& e) {
        err << "solver failure: " << e.what() << "\n";
        return kSolverFailure;
    } catch (const std::invalid_argument& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return kInvalidConfig;
    } catch (const std::out_of_range& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return kInvalidConfig;
    }
}

}  // namespace capture::cli
