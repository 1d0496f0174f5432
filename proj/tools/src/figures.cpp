#include "capture/cli/figures.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "capture/cone_spectra.hpp"
#include "capture/perturbed_domain.hpp"

namespace capture::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSector = 2.0 * kPi / 3.0;

using Pt = std::array<double, 2>;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// Plane region [x0, x1] x [y0, y1] drawn on a square canvas, y up.
class Canvas {
public:
    Canvas(double x0, double x1, double y0, double y1) : x0_(x0), y1_(y1), scale_(480.0 / std::max(x1 - x0, y1 - y0)) {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"520\" viewBox=\"0 0 520 520\">\n"
             << "<rect width=\"520\" height=\"520\" fill=\"white\"/>\n";
    }

    void polyline(const std::vector<Pt>& pts, const std::string& id, const std::string& style) {
        out_ << "<polyline id=\"" << id << "\" fill=\"none\" " << style << " points=\"";
        for (const Pt& p : pts) out_ << px(p[0]) << ',' << py(p[1]) << ' ';
        out_ << "\"/>\n";
    }

    void polygon(const std::vector<Pt>& pts, const std::string& id, const std::string& style) {
        out_ << "<polygon id=\"" << id << "\" " << style << " points=\"";
        for (const Pt& p : pts) out_ << px(p[0]) << ',' << py(p[1]) << ' ';
        out_ << "\"/>\n";
    }

    void circle(Pt c, double r, const std::string& id, const std::string& style) {
        out_ << "<circle id=\"" << id << "\" cx=\"" << px(c[0]) << "\" cy=\"" << py(c[1]) << "\" r=\"" << num(r * scale_)
             << "\" " << style << "/>\n";
    }

    void label(Pt at, const std::string& text) {
        out_ << "<text x=\"" << px(at[0]) << "\" y=\"" << py(at[1]) << "\" font-family=\"serif\" font-size=\"18\">"
             << text << "</text>\n";
    }

    void group(const std::string& id) { out_ << "<g id=\"" << id << "\">\n"; }
    void end_group() { out_ << "</g>\n"; }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    std::string px(double x) const { return num(20.0 + (x - x0_) * scale_); }
    std::string py(double y) const { return num(20.0 + (y1_ - y) * scale_); }

    double x0_, y1_, scale_;
    std::ostringstream out_;
};

Vec3 normalize(Vec3 v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / n, v[1] / n, v[2] / n};
}

// Stereographic image, from the antipode of the vertex at r = 0.
Pt stereo_plane(const Vec3& v) { return {v[0] / (1.0 + v[2]), v[1] / (1.0 + v[2])}; }

Pt polar_plane(double r, double theta) {
    const double rho = stereo(r);
    return {rho * std::cos(theta), rho * std::sin(theta)};
}

std::vector<Pt> great_arc(const Vec3& a, const Vec3& b, int samples = 64) {
    const double omega = std::acos(std::clamp(a[0] * b[0] + a[1] * b[1] + a[2] * b[2], -1.0, 1.0));
    std::vector<Pt> pts;
    for (int i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        const double wa = std::sin((1.0 - t) * omega) / std::sin(omega), wb = std::sin(t * omega) / std::sin(omega);
        pts.push_back(stereo_plane({wa * a[0] + wb * b[0], wa * a[1] + wb * b[1], wa * a[2] + wb * b[2]}));
    }
    return pts;
}

std::vector<Pt> t2_outline() {
    std::vector<Pt> pts{{0.0, 0.0}};
    for (int i = 0; i <= 120; ++i) {
        const double t = kSector * i / 120.0;
        pts.push_back(polar_plane(t2_boundary_r(t), t));
    }
    pts.push_back({0.0, 0.0});
    return pts;
}

std::string figure1() {
    // Orthographic view: azimuth -30 degrees, elevation 20 degrees.
    const double az = -kPi / 6.0, el = kPi / 9.0;
    auto project = [&](const Vec3& v, bool& front) -> Pt {
        const double depth = (v[0] * std::cos(az) + v[1] * std::sin(az)) * std::cos(el) + v[2] * std::sin(el);
        front = depth >= 0.0;
        return {-v[0] * std::sin(az) + v[1] * std::cos(az),
                v[2] * std::cos(el) - (v[0] * std::cos(az) + v[1] * std::sin(az)) * std::sin(el)};
    };
    Canvas c(-1.15, 1.15, -1.15, 1.15);
    c.circle({0.0, 0.0}, 1.0, "sphere", "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"");

    auto curve = [&](auto point, double t0, double t1, const std::string& id, const std::string& style) {
        std::vector<Pt> front, back;
        c.group(id);
        int part = 0;
        bool last = true;
        auto flush = [&](std::vector<Pt>& pts, bool visible) {
            if (pts.size() > 1)
                c.polyline(pts, id + "-" + std::to_string(part++),
                           visible ? style : style + " stroke-dasharray=\"4 4\" opacity=\"0.5\"");
            pts.clear();
        };
        std::vector<Pt> run;
        for (int i = 0; i <= 200; ++i) {
            bool vis = false;
            const Pt p = project(point(t0 + (t1 - t0) * i / 200.0), vis);
            if (i > 0 && vis != last) {
                run.push_back(p);
                flush(run, last);
            }
            run.push_back(p);
            last = vis;
        }
        flush(run, last);
        c.end_group();
    };
    auto equator = [](double t) { return Vec3{std::cos(t), std::sin(t), 0.0}; };
    curve(equator, 0.0, 2.0 * kPi, "equator", "stroke=\"gray\" stroke-width=\"1\"");
    for (double t : {0.0, kSector}) {
        auto meridian = [t](double s) { return Vec3{std::sin(s) * std::cos(t), std::sin(s) * std::sin(t), std::cos(s)}; };
        curve(meridian, 0.0, kPi, t == 0.0 ? "D2-side0" : "D2-side1", "stroke=\"navy\" stroke-width=\"2\"");
    }
    curve(equator, 0.0, kSector, "T1", "stroke=\"crimson\" stroke-width=\"4\"");
    bool vis = false;
    c.label(project(equator(kSector / 2.0), vis), "T1");
    c.label(project({0.35, 0.6, 0.45}, vis), "D2");
    return c.finish();
}

std::string figure2() {
    const NodalDomainSpec spec{};
    Canvas c(-1.4, 2.6, -0.5, 3.5);

    // Zero set of H along each ray: the first sign change in r.
    std::vector<Pt> nodal{{0.0, 0.0}};
    for (int i = 0; i <= 120; ++i) {
        const double t = kSector * i / 120.0;
        double lo = 0.0, hi = 0.0;
        for (double r = 0.02; r < kPi - 0.05; r += 0.02) {
            if (h_function(spec, r, t) <= 0.0) {
                hi = r;
                lo = r - 0.02;
                break;
            }
        }
        if (hi == 0.0) continue;
        for (int it = 0; it < 50; ++it) {
            const double mid = 0.5 * (lo + hi);
            (h_function(spec, mid, t) > 0.0 ? lo : hi) = mid;
        }
        nodal.push_back(polar_plane(0.5 * (lo + hi), t));
    }
    nodal.push_back({0.0, 0.0});
    c.polyline(nodal, "G2", "stroke=\"black\" stroke-width=\"2\"");
    c.polyline(t2_outline(), "T2", "stroke=\"crimson\" stroke-width=\"2\" stroke-dasharray=\"6 4\"");

    std::vector<Pt> hat;
    const double d2 = vertex_angle_delta(2);
    for (int i = 0; i <= 120; ++i) hat.push_back(polar_plane(d2, kSector * i / 120.0));
    c.polyline(hat, "T2hat", "stroke=\"steelblue\" stroke-width=\"1.5\" stroke-dasharray=\"2 3\"");
    c.label(polar_plane(1.2, kPi / 3.0), "T2");
    c.label(polar_plane(2.3, kPi / 3.0 + 0.15), "G2");
    return c.finish();
}

std::string figure3() {
    const Vec3 a = polar_to_unit(0.0, 0.0);
    const Vec3 b = polar_to_unit(t2_boundary_r(0.0), 0.0);
    const Vec3 cc = polar_to_unit(t2_boundary_r(kSector), kSector);
    const Vec3 centre = normalize({a[0] + b[0] + cc[0], a[1] + b[1] + cc[1], a[2] + b[2] + cc[2]});
    const Vec3 mab = normalize({a[0] + b[0], a[1] + b[1], a[2] + b[2]});
    const Vec3 mbc = normalize({b[0] + cc[0], b[1] + cc[1], b[2] + cc[2]});
    const Vec3 mca = normalize({cc[0] + a[0], cc[1] + a[1], cc[2] + a[2]});

    Canvas c(-1.4, 2.6, -0.5, 3.5);
    // The sixth used by the collocation scheme: vertex, side midpoint, centre.
    std::vector<Pt> sixth = great_arc(a, mab);
    for (const Pt& p : great_arc(mab, centre)) sixth.push_back(p);
    for (const Pt& p : great_arc(centre, a)) sixth.push_back(p);
    c.polygon(sixth, "sixth", "fill=\"#f3d9a4\" stroke=\"none\"");
    c.polyline(t2_outline(), "T2", "stroke=\"black\" stroke-width=\"2\"");
    c.group("sixths");
    int k = 0;
    for (const Vec3* p : {&a, &b, &cc, &mab, &mbc, &mca})
        c.polyline(great_arc(centre, *p), "cut" + std::to_string(k++), "stroke=\"gray\" stroke-width=\"1\"");
    c.end_group();
    c.label(stereo_plane(centre), "O");
    return c.finish();
}

}  // namespace

std::vector<Figure> render_figures() {
    return {{"figure1.svg", figure1()}, {"figure2.svg", figure2()}, {"figure3.svg", figure3()}};
}

}  // namespace capture::cli
