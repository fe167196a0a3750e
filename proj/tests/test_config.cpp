#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mss/config.hpp"
#include "mss/error.hpp"
#include "mss/expression.hpp"

using namespace mss;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::IoError;
}

const char* kTorusToml = R"toml(# gradient map on the torus
[surface]
kind = "torus"

[map]
name = "cfg-torus"
c = 0.5
x = "x + c/(2*pi) * sin(2*pi*x)"
y = 'y + c/(2*pi) * sin(2*pi*y)'

[options]
max_period = 1
grid = 16
budget = 2.0   # short separatrices
)toml";

}  // namespace

TEST_CASE("expression evaluation") {
    Expression e = Expression::parse("2*x + sin(pi*y)^2 - atan2(y, x)", {"x", "y"});
    double x = 0.7, y = -0.3;
    CHECK(e.eval(x, y) == doctest::Approx(2 * x + std::pow(std::sin(std::numbers::pi * y), 2) - std::atan2(y, x)));
    CHECK(Expression::parse("-2^2", {}).eval(std::vector<double>{}) == doctest::Approx(-4));
    CHECK(Expression::parse("2^3^2", {}).eval(std::vector<double>{}) == doctest::Approx(512));
    CHECK(Expression::parse("max(a, 3) + floor(2.5)", {"a"}).eval(std::vector<double>{1}) == doctest::Approx(5));
    CHECK(Expression::parse("e", {}).eval(std::vector<double>{}) == doctest::Approx(std::numbers::e));
}

TEST_CASE("expression errors") {
    CHECK(kind_of([] { Expression::parse("2*(x", {"x"}); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { Expression::parse("foo(x)", {"x"}); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { Expression::parse("x + z", {"x"}); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { Expression::parse("", {}); }) == ErrorKind::ParseError);
}

TEST_CASE("toml subset") {
    auto j = parse_toml("a = 1\nb = -2.5e1\n[t.u]\ns = \"q\\\"x\"\narr = [1, 2,\n 3]\nflag = true\n");
    CHECK(j["a"].get<int>() == 1);
    CHECK(j["b"].get<double>() == -25.0);
    CHECK(j["t"]["u"]["s"].get<std::string>() == "q\"x");
    CHECK(j["t"]["u"]["arr"].size() == 3);
    CHECK(j["t"]["u"]["flag"].get<bool>());
    CHECK(parse_toml("n = 1_000")["n"].get<int>() == 1000);
    CHECK(kind_of([] { parse_toml("a = 1\na = 2\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_toml("a = \"open\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_toml("a = 1 2\n"); }) == ErrorKind::ParseError);
    try {
        parse_toml("ok = 1\n\nbad = @\n");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("torus config builds a working map") {
    MapConfig c = load_config_text(kTorusToml, false);
    CHECK(c.map.name == "cfg-torus");
    CHECK(c.map.surface.kind() == SurfaceKind::Torus);
    CHECK(c.options.grid_density == 16);
    CHECK(c.options.arclength_budget == 2.0);
    REQUIRE(c.map.parameters.size() == 1);
    CHECK(c.map.parameters[0].first == "c");
    SurfacePoint p{0, {0.2, 0.7}};
    SurfacePoint q = apply_map(c.map, p, 1);
    double k = 0.5 / (2 * std::numbers::pi);
    CHECK(q.coords.x == doctest::Approx(0.2 + k * std::sin(2 * std::numbers::pi * 0.2)));
    // No inverse given: Newton inverse is used.
    CHECK(c.map.surface.distance(apply_map(c.map, q, -1), p) < 1e-10);
}

TEST_CASE("json config matches toml config") {
    const char* js = R"({"surface": {"kind": "plane", "seed_box": [-1, -1, 1, 1]},
        "map": {"x": "0.5*x", "y": "2*y", "inverse_x": "2*x", "inverse_y": "0.5*y"},
        "options": {"max_period": 2}})";
    MapConfig a = load_config_text(js, true);
    MapConfig b = load_config_text(
        "[surface]\nkind = \"plane\"\nseed_box = [-1, -1, 1, 1]\n[map]\nx = \"0.5*x\"\ny = \"2*y\"\n"
        "inverse_x = \"2*x\"\ninverse_y = \"0.5*y\"\n[options]\nmax_period = 2\n",
        false);
    SurfacePoint p{0, {0.4, 0.1}};
    CHECK(apply_map(a.map, p, 1).coords == apply_map(b.map, p, 1).coords);
    CHECK(a.options.max_period == 2);
    REQUIRE(a.map.seed_boxes.size() == 1);
    CHECK(a.map.seed_boxes[0].hi.x == 1.0);
}

TEST_CASE("config errors") {
    CHECK(kind_of([] { load_config_text("[map]\nx = \"x\"\n", false); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { load_config_text("[map]\nx = \"x\"\ny = \"y\"\npi = 3\n", false); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { load_config_text("[surface]\nkind = \"klein\"\n[map]\nx=\"x\"\ny=\"y\"\n", false); }) ==
          ErrorKind::ParseError);
    CHECK(kind_of([] { load_config_text("[surface]\nkind = \"sphere\"\n[map]\nx=\"x\"\ny=\"y\"\n", false); }) ==
          ErrorKind::ParseError);
    CHECK(kind_of([] { load_config_text("[map]\nx=\"x\"\ny=\"y\"\n[options]\ngrid = 1\n", false); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([] { load_config_text("{\"map\": ", true); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { load_config_file("/nonexistent/map.toml"); }) == ErrorKind::IoError);
}
