#include "mss/catalog.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "mss/canonical.hpp"
#include "mss/error.hpp"

namespace mss {

namespace blocks {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Solves g(x) = y for an increasing g with g(x) - x periodic and small.
template <class G, class D>
double invert_monotone(G g, D dg, double y) {
    double x = y;
    for (int it = 0; it < 100; ++it) {
        double r = g(x) - y;
        if (std::abs(r) < 1e-16) break;
        x -= r / dg(x);
    }
    return x;
}

double decay(double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

double circle_gradient(double x, double c) { return x + c / kTwoPi * std::sin(kTwoPi * x); }

double circle_gradient_inverse(double y, double c) {
    return invert_monotone([c](double x) { return circle_gradient(x, c); },
                           [c](double x) { return 1.0 + c * std::cos(kTwoPi * x); }, y);
}

double quarter_gradient(double y, double c) { return y - c / (2.0 * kTwoPi) * std::sin(2.0 * kTwoPi * y); }

double quarter_gradient_inverse(double y, double c) {
    return invert_monotone([c](double x) { return quarter_gradient(x, c); },
                           [c](double x) { return 1.0 - c * std::cos(2.0 * kTwoPi * x); }, y);
}

double smooth_ramp(double t, double a, double b) {
    double u = (t - a) / (b - a);
    if (u <= 0) return 0.0;
    if (u >= 1) return 1.0;
    double p = decay(u);
    double q = decay(1.0 - u);
    return p / (p + q);
}

double band_flow(double y, double a, double b, double time) {
    double w = b - a;
    double u = (y - std::floor(y) - a) / w;
    if (time == 0.0 || u <= 0.0 || u >= 1.0) return y;
    // cot(pi u) grows linearly in time along dy/dt = -sin^2(pi u).
    double z = 1.0 / std::tan(std::numbers::pi * u) + std::numbers::pi * time / w;
    double v = 0.5 - std::atan(z) / std::numbers::pi;
    return std::floor(y) + a + w * v;
}

double bump(double t, double a, double b) {
    double u = (2.0 * t - a - b) / (b - a);
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

}  // namespace blocks

namespace {

using namespace blocks;

double frac(double v) { return v - std::floor(v); }

// Continuous lift of a full-turn Dehn twist profile: 0 below the band, 1
// above it, increasing by 1 per turn of y.
double twist_lift(double y, double a, double b) { return std::floor(y) + smooth_ramp(frac(y), a, b); }

double double_twist_lift(double y) {
    return twist_lift(y, 0.05, 0.2) + twist_lift(y, 0.55, 0.7);
}

}  // namespace

MapSpec gradient_torus_map(double c) {
    MapSpec m;
    m.name = "gradient-torus-4pt";
    m.surface = SurfaceModel::torus();
    m.forward = {[c](Vec2 p) { return Vec2{circle_gradient(p.x, c), circle_gradient(p.y, c)}; }};
    m.inverse = {[c](Vec2 p) { return Vec2{circle_gradient_inverse(p.x, c), circle_gradient_inverse(p.y, c)}; }};
    m.jacobian = {[c](Vec2 p) {
        return Mat2::diag(1.0 + c * std::cos(2 * std::numbers::pi * p.x), 1.0 + c * std::cos(2 * std::numbers::pi * p.y));
    }};
    m.parameters = {{"c", c}};
    return m;
}

// Gradient product map followed by a Dehn twist x += twist * ramp(y) on the
// band 0.1 < y < 0.4. With twist = 1 the twist is a full turn, so the map is
// well defined on the torus.
MapSpec orientable_two_saddle_map(double twist) {
    const double c = 0.5;
    MapSpec m;
    m.name = "orientable-two-saddle";
    m.surface = SurfaceModel::torus();
    m.forward = {[=](Vec2 p) {
        double y = circle_gradient(p.y, c);
        double x = circle_gradient(p.x, c) + twist * twist_lift(y, 0.1, 0.4);
        return Vec2{x, y};
    }};
    m.inverse = {[=](Vec2 p) {
        double x = p.x - twist * twist_lift(p.y, 0.1, 0.4);
        return Vec2{circle_gradient_inverse(x, c), circle_gradient_inverse(p.y, c)};
    }};
    m.parameters = {{"c", c}, {"twist", twist}};
    return m;
}

// Product of a two-well gradient map in x and a four-well one in y, followed
// by Dehn twists on the bands 0.05 < y < 0.2 and 0.55 < y < 0.7 and a downward
// slide along 0.15 < y < 0.7 lasting push * bump(x) on 0.1 < x < 0.4.
MapSpec nonorientable_chain_map(double contraction, double push, double twist) {
    const double c = 0.5;
    MapSpec m;
    m.name = "nonorientable-chain";
    m.surface = SurfaceModel::torus();
    m.forward = {[=](Vec2 p) {
        double x = circle_gradient(p.x, c);
        double y = quarter_gradient(p.y, contraction);
        x += twist * double_twist_lift(y);
        y = band_flow(y, 0.15, 0.7, push * bump(frac(x), 0.1, 0.4));
        return Vec2{x, y};
    }};
    m.inverse = {[=](Vec2 p) {
        double y = band_flow(p.y, 0.15, 0.7, -push * bump(frac(p.x), 0.1, 0.4));
        double x = p.x - twist * double_twist_lift(y);
        return Vec2{circle_gradient_inverse(x, c), quarter_gradient_inverse(y, contraction)};
    }};
    m.parameters = {{"c", c}, {"contraction", contraction}, {"push", push}, {"twist", twist}};
    return m;
}

MapSpec north_south_sphere_map() {
    MapSpec m;
    m.name = "north-south-sphere";
    m.surface = SurfaceModel::sphere();
    m.forward = {[](Vec2 z) { return z * 0.5; }, [](Vec2 w) { return w * 2.0; }};
    m.inverse = {[](Vec2 z) { return z * 2.0; }, [](Vec2 w) { return w * 0.5; }};
    m.jacobian = {[](Vec2) { return Mat2::diag(0.5, 0.5); }, [](Vec2) { return Mat2::diag(2.0, 2.0); }};
    return m;
}

// z -> R^k (a(|z|^2) z exp(-i Im(z^3) / (6 (1 + (|z|^2 - 1)^2)))), with
// a(t) = (1 + t) / 2 and R the rotation by 2pi/3. Sink at 0, saddles at the cube roots of unity (period 3 when
// k = 1), sources at the cube roots of -1.
MapSpec rotating_sink_map(int rotation_steps) {
    const double c = 1.0 / 6.0;
    const double angle = 2.0 * std::numbers::pi / 3.0 * rotation_steps;
    MapSpec m;
    m.name = rotation_steps == 0 ? "saddle-sink-composite" : "rotating-sink-3";
    m.surface = SurfaceModel::plane();
    ChartFn fwd = [=](Vec2 p) {
        std::complex<double> z(p.x, p.y);
        double t = std::norm(z);
        double twist = c * std::imag(z * z * z) / (1.0 + (t - 1.0) * (t - 1.0));
        std::complex<double> w = 0.5 * (1.0 + t) * z * std::exp(std::complex<double>(0.0, angle - twist));
        return Vec2{w.real(), w.imag()};
    };
    // Inverse: |w| = (1 + r^2) r / 2 fixes r, then phi - k sin(3 phi) = arg w - angle
    // with k = c r^3 / (1 + (r^2 - 1)^2) < 1/3, so both equations are monotone.
    ChartFn inv = [=](Vec2 p) {
        double rho = std::hypot(p.x, p.y);
        if (rho == 0.0) return Vec2{0.0, 0.0};
        double r = std::cbrt(2.0 * rho);
        for (int it = 0; it < 60; ++it) {
            double step = (r * r * r + r - 2.0 * rho) / (3.0 * r * r + 1.0);
            r -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, r)) break;
        }
        double k = c * r * r * r / (1.0 + (r * r - 1.0) * (r * r - 1.0));
        double target = std::atan2(p.y, p.x) - angle;
        double phi = target;
        for (int it = 0; it < 60; ++it) {
            double step = (phi - k * std::sin(3.0 * phi) - target) / (1.0 - 3.0 * k * std::cos(3.0 * phi));
            phi -= step;
            if (std::abs(step) < 1e-16) break;
        }
        return Vec2{r * std::cos(phi), r * std::sin(phi)};
    };
    m.forward = {fwd};
    m.inverse = {inv};
    m.seed_boxes = {Box{{-1.5, -1.5}, {1.5, 1.5}}};
    m.parameters = {{"rotation_steps", static_cast<double>(rotation_steps)}, {"c", c}};
    return m;
}

// (x, y) -> (-(x + a/pi sin(pi x)), -y/2): saddle at 0 with negative
// eigenvalues and a period-2 sink orbit at (+-1, 0).
MapSpec flip_saddle_map(double a) {
    MapSpec m;
    m.name = "flip-saddle";
    m.surface = SurfaceModel::plane();
    auto g = [a](double x) { return x + a / std::numbers::pi * std::sin(std::numbers::pi * x); };
    auto dg = [a](double x) { return 1.0 + a * std::cos(std::numbers::pi * x); };
    m.forward = {[=](Vec2 p) { return Vec2{-g(p.x), -0.5 * p.y}; }};
    m.inverse = {[=](Vec2 p) {
        double target = -p.x;
        double x = target;
        for (int it = 0; it < 100; ++it) {
            double r = g(x) - target;
            if (std::abs(r) < 1e-16) break;
            x -= r / dg(x);
        }
        return Vec2{x, -2.0 * p.y};
    }};
    m.jacobian = {[=](Vec2 p) { return Mat2::diag(-dg(p.x), -0.5); }};
    m.seed_boxes = {Box{{-1.5, -1.0}, {1.5, 1.0}}};
    m.parameters = {{"a", a}};
    return m;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;
        auto add = [&](std::string name, std::string desc, std::function<MapSpec()> build, AnalysisOptions opts,
                       ExpectedOutcome exp) {
            v.push_back({std::move(name), std::move(desc), std::move(build), opts, std::move(exp)});
        };
        AnalysisOptions base;
        add("canonical-plus", "canonical saddle a_1(x1,x2) = (x1/2, 2 x2) on the plane",
            [] { return canonical_map_spec(1); }, base, {"vacuous", 0, 0, 1, 0, -1});
        add("canonical-minus", "canonical saddle a_-1(x1,x2) = (-x1/2, -2 x2) on the plane",
            [] { return canonical_map_spec(-1); }, base, {"vacuous", 0, 0, 1, 0, -1});
        add("north-south-sphere", "z -> z/2 on the two-chart sphere: one sink, one source",
            [] { return north_south_sphere_map(); }, base, {"vacuous", 0, 1, 0, 1, -1});
        add("gradient-torus-4pt", "product of circle gradient maps on the torus: 1 sink, 2 saddles, 1 source",
            [] { return gradient_torus_map(0.5); }, base, {"vacuous", 0, 1, 2, 1, 1});
        add("orientable-two-saddle",
            "gradient torus map followed by a full Dehn twist on a horizontal band; W^u of one saddle "
            "crosses W^s of the other with constant sign",
            [] { return orientable_two_saddle_map(1.0); }, base, {"orientable", 1, 1, 2, 1, 1});
        add("nonorientable-chain",
            "2x4 gradient torus map followed by Dehn twists on two bands and a localized push; four saddles "
            "whose connections form a chain of length 2",
            [] { return nonorientable_chain_map(0.3, 0.4, 1.0); }, base,
            {"non-orientable", 2, 2, 4, 2, 1});
        AnalysisOptions per3 = base;
        per3.max_period = 3;
        add("saddle-sink-composite", "radial saddles on the unit circle feeding a linear-like sink at the origin",
            [] { return rotating_sink_map(0); }, base, {"vacuous", 0, 1, 3, 3, 1});
        add("rotating-sink-3",
            "the composite rotated by 2pi/3: a period-3 saddle orbit whose separatrices wind 3 times in the "
            "sink's orbit space",
            [] { return rotating_sink_map(1); }, per3, {"vacuous", 0, 1, 1, 1, 3});
        AnalysisOptions per2 = base;
        per2.max_period = 2;
        add("flip-saddle", "saddle with negative eigenvalues feeding a period-2 sink orbit",
            [] { return flip_saddle_map(0.5); }, per2, {"vacuous", 0, 1, 1, 0, 1});
        return v;
    }();
    return entries;
}

const CatalogEntry& find_catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw Error(ErrorKind::UnknownMap, "no catalog entry named '" + name + "'");
}

}  // namespace mss
