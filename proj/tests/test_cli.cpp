#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "capture/cli/commands.hpp"
#include "capture/cli/figures.hpp"
#include "capture/cli/json_io.hpp"

using nlohmann::json;
using namespace capture;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

template <class T>
void check_round_trip(const T& value) {
    const json j = value;
    const T back = json::parse(j.dump()).get<T>();
    CHECK(back == value);
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("capture_cli_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

int count(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (auto at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("json round trip of every result type") {
    for (const auto& row : hat_t_table(4)) check_round_trip(row);
    check_round_trip(truncated_cone_eigen({3, 5.102, vertex_angle_delta(3)}));
    check_round_trip(verdict(4));

    NodalDomainSpec spec;
    const auto good = verify_containment(spec);
    REQUIRE(good.passed);
    check_round_trip(good);
    spec.c = 0.1;
    const auto bad = verify_containment(spec);
    REQUIRE_FALSE(bad.passed);
    REQUIRE(bad.failed_at.has_value());
    check_round_trip(bad);

    check_round_trip(sinc::convergence_study({16}));

    mc::PursuitConfig cfg;
    cfg.paths = 2000;
    cfg.t_max = 100.0;
    check_round_trip(cfg);
    const auto sample = mc::simulate(cfg);
    const auto curve = mc::survival_curve(sample);
    check_round_trip(curve);
    check_round_trip(mc::fit_tail_exponent(curve, {.window = std::pair{1.0, 30.0}}));
}

TEST_CASE("certificate json keeps the method and a null failure point") {
    const json j = verify_containment(NodalDomainSpec{});
    CHECK(j.at("method").get<std::string>().find("not interval arithmetic") != std::string::npos);
    CHECK(j.at("failed_at").is_null());
    CHECK(j.at("passed").get<bool>());
}

TEST_CASE("table 6 prints the five rows") {
    const Result r = invoke({"table", "6", "--format", "json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("provenance").at("version") == cli::kVersion);
    const auto rows = doc.at("result").get<std::vector<HatTableRow>>();
    REQUIRE(rows.size() == 5);
    const double lam[] = {2.25, 5.00463581, 7.884040724, 10.77018488, 13.6203196};
    const double a[] = {0.75, 0.89614957, 0.99030540, 1.05417466, 1.09882819};
    for (int i = 0; i < 5; ++i) {
        CHECK(rows[i].n == i + 2);
        CHECK(std::abs(rows[i].lambda_hat - lam[i]) <= 1e-6);
        CHECK(std::abs(rows[i].a_lower - a[i]) <= 1e-7);
    }

    const Result text = invoke({"table", "--max-n", "6"});
    CHECK(text.code == 0);
    CHECK(text.out.rfind("# capture 0.1.0", 0) == 0);
    CHECK(text.out.find("7.884040") != std::string::npos);
}

TEST_CASE("verdict 4 is finite with a(4) above one") {
    const Result r = invoke({"verdict", "4", "--format", "json"});
    REQUIRE(r.code == 0);
    const Verdict v = json::parse(r.out).at("result").get<Verdict>();
    CHECK(v.finite);
    double a4 = 0.0;
    for (const auto& step : v.chain)
        if (step.quantity.rfind("a(4)", 0) == 0) a4 = step.value;
    // The reference is printed to eight decimals; compare at that precision.
    CHECK(std::round(a4 * 1e8) / 1e8 >= 1.00007318);
    CHECK(std::abs(a4 - 1.00007318) <= 1e-7);
}

TEST_CASE("verify-g2 exit codes") {
    CHECK(invoke({"verify-g2"}).code == 0);
    const Result bad = invoke({"verify-g2", "--c", "0.1"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAILED") != std::string::npos);
}

TEST_CASE("invalid input exits 2") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"table", "--bogus"}).code == 2);
    CHECK(invoke({"table", "--format", "xml"}).code == 2);
    CHECK(invoke({"figures", "--format", "json"}).code == 2);
    CHECK(invoke({"eigen", "--n", "3", "--lambda", "2", "--r0", "4"}).code == 2);
    CHECK(invoke({"--config", "/nonexistent/capture.toml", "table"}).code == 2);
}

TEST_CASE("config file values, flag overrides and unknown keys") {
    const auto dir = scratch("config");
    {
        std::ofstream f(dir / "good.toml");
        f << "format = \"csv\"\n[table]\nmax_n = 4\n";
    }
    Result r = invoke({"--config", (dir / "good.toml").string(), "table"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("n,lambda_hat,a") != std::string::npos);
    CHECK(count(r.out, "\n") == 5);  // provenance, header, three rows

    r = invoke({"--config", (dir / "good.toml").string(), "table", "--max-n", "3"});
    REQUIRE(r.code == 0);
    CHECK(count(r.out, "\n") == 4);

    {
        std::ofstream f(dir / "bad.toml");
        f << "colour = \"blue\"\n";
    }
    CHECK(invoke({"--config", (dir / "bad.toml").string(), "table"}).code == 2);
    {
        std::ofstream f(dir / "bad_section.toml");
        f << "[table]\nmax_m = 4\n";
    }
    CHECK(invoke({"--config", (dir / "bad_section.toml").string(), "table"}).code == 2);
}

TEST_CASE("provenance hash follows the configuration") {
    auto hash = [](const std::vector<std::string>& args) {
        const Result r = invoke(args);
        REQUIRE(r.code == 0);
        return json::parse(r.out).at("provenance").at("config_hash").get<std::string>();
    };
    const std::string a = hash({"table", "4", "--format", "json"});
    CHECK(a == hash({"table", "4", "--format", "json"}));
    CHECK(a != hash({"table", "5", "--format", "json"}));
    CHECK(a != hash({"table", "4", "--format", "json", "--seed", "9"}));
}

TEST_CASE("mc output is bit-stable for a seed and thread count independent") {
    const std::vector<std::string> base{"mc", "--paths", "3000", "--t-max", "100", "--seed", "5", "--format", "csv"};
    const Result a = invoke(base);
    REQUIRE(a.code == 0);
    CHECK(a.out == invoke(base).out);
    auto threaded = base;
    threaded.insert(threaded.end(), {"--threads", "3"});
    const Result b = invoke(threaded);
    // Only the provenance line differs.
    CHECK(a.out.substr(a.out.find('\n')) == b.out.substr(b.out.find('\n')));
}

TEST_CASE("--out and CAPTURE_OUT_DIR redirect output") {
    const auto dir = scratch("out");
    Result r = invoke({"lambda-cr", "--out", (dir / "lcr.json").string(), "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const json doc = json::parse(slurp(dir / "lcr.json"));
    CHECK(std::abs(doc.at("result").at("lambda_cr").get<double>() - 5.101267527) <= 1e-6);
    CHECK(std::abs(doc.at("result").at("residual").get<double>()) <= 1e-8);

    ::setenv("CAPTURE_OUT_DIR", dir.c_str(), 1);
    r = invoke({"eigen", "--n", "3", "--lambda", "5.102", "--r0", "2.1862760354652844"});
    ::unsetenv("CAPTURE_OUT_DIR");
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "eigen.txt").find("mu ") != std::string::npos);
}

TEST_CASE("figures are well-formed svg with the expected layers") {
    const auto figs = cli::render_figures();
    REQUIRE(figs.size() == 3);
    for (const auto& f : figs) {
        CHECK(f.svg.rfind("<svg", 0) == 0);
        CHECK(f.svg.find("</svg>") == f.svg.size() - 7);
        CHECK(count(f.svg, "<g") == count(f.svg, "</g>"));
        CHECK(f.svg.find("nan") == std::string::npos);
    }
    CHECK(figs[0].svg.find("id=\"T1\"") != std::string::npos);
    CHECK(figs[0].svg.find("id=\"D2-side0\"") != std::string::npos);
    CHECK(figs[1].svg.find("id=\"T2\"") != std::string::npos);
    CHECK(figs[1].svg.find("id=\"G2\"") != std::string::npos);
    CHECK(figs[1].svg.find("id=\"T2hat\"") != std::string::npos);
    CHECK(figs[1].svg.find("stroke-dasharray=\"6 4\"") != std::string::npos);
    CHECK(figs[2].svg.find("id=\"sixths\"") != std::string::npos);
    CHECK(count(figs[2].svg, "id=\"cut") == 6);

    const auto dir = scratch("figures");
    const Result r = invoke({"figures", "--out", dir.string()});
    REQUIRE(r.code == 0);
    for (const char* name : {"figure1.svg", "figure2.svg", "figure3.svg"})
        CHECK(slurp(dir / name).find("<!-- capture 0.1.0") != std::string::npos);
}

TEST_CASE("installed binary reports exit codes") {
    const char* exe = std::getenv("CAPTURE_CLI");
    if (!exe) return;
    auto status = [&](const std::string& args) {
        const int s = std::system((std::string(exe) + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status("verdict 4") == 0);
    CHECK(status("verify-g2 --c 0.1") == 1);
    CHECK(status("table --nope") == 2);
}
