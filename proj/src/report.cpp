#include "mss/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "mss/error.hpp"

namespace mss {

using Json = nlohmann::ordered_json;

double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

namespace {

Json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
}

Json point_json(const SurfacePoint& p) { return Json{{"chart", p.chart}, {"x", num(p.coords.x)}, {"y", num(p.coords.y)}}; }

Json vec_json(Vec2 v) { return Json::array({num(v.x), num(v.y)}); }

Json map_json(const AnalysisReport& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.parameters) params[k] = num(v);
    const AnalysisOptions& o = r.options;
    return Json{{"name", r.map_name},
                {"surface", surface_name(r.surface)},
                {"parameters", params},
                {"options",
                 {{"max_period", o.max_period},
                  {"grid_density", o.grid_density},
                  {"arclength_budget", num(o.arclength_budget)},
                  {"max_step", num(o.max_step)},
                  {"max_angle_deg", num(o.max_angle_deg)}}}};
}

Json orbits_json(const AnalysisReport& r) {
    Json out = Json::array();
    for (const auto& o : r.orbits) {
        Json pts = Json::array();
        for (const auto& p : o.points) pts.push_back(point_json(p));
        Json ev = Json::array();
        for (const auto& e : o.eigenvalues) ev.push_back(Json{{"re", num(e.real())}, {"im", num(e.imag())}});
        Json charts = Json::array();
        for (const auto& c : r.charts)
            if (c.owner == o.id)
                charts.push_back(Json{{"point", c.point_index}, {"r", num(c.r)}, {"residual", num(c.residual)}});
        Json j{{"id", o.id}, {"kind", orbit_kind_name(o.kind)}, {"period", o.period}, {"points", pts},
               {"eigenvalues", ev}};
        j["nu"] = o.kind == OrbitKind::Saddle ? Json(o.orientation) : Json(nullptr);
        j["charts"] = charts;
        out.push_back(j);
    }
    return out;
}

Json separatrices_json(const AnalysisReport& r) {
    Json out = Json::array();
    for (const auto& s : r.separatrices) {
        Json j{{"id", s.id},
               {"label", s.label()},
               {"saddle", s.owner},
               {"point", s.point_index},
               {"branch", branch_name(s.branch())},
               {"period", s.period},
               {"arclength", num(s.curve.arclength)},
               {"vertices", s.polyline().size()},
               {"fundamental_segments", num(s.params().empty() ? 0.0 : s.params().back())},
               {"truncated", s.curve.truncated},
               {"escaped", s.curve.escaped}};
        j["terminal_orbit"] = s.curve.terminal_orbit >= 0 ? Json(s.curve.terminal_orbit) : Json(nullptr);
        j["invariance_residual"] = num(s.invariance_residual);
        out.push_back(j);
    }
    return out;
}

Json heteroclinic_json(const AnalysisReport& r) {
    Json orbits = Json::array();
    for (const auto& h : r.heteroclinic_orbits) {
        size_t count = static_cast<size_t>(
            std::count_if(r.crossings.begin(), r.crossings.end(), [&](const auto& c) { return c.orbit_id == h.orbit_id; }));
        orbits.push_back(Json{{"id", h.orbit_id},
                              {"from", h.from_saddle},
                              {"to", h.to_saddle},
                              {"unstable_separatrix", h.unstable_separatrix},
                              {"stable_separatrix", h.stable_separatrix},
                              {"location", point_json(h.location)},
                              {"refined_location", point_json(h.refined_location)},
                              {"refined", h.refined},
                              {"refine_residual", num(h.refine_residual)},
                              {"v_u", vec_json(h.v_u)},
                              {"v_s", vec_json(h.v_s)},
                              {"sign", h.sign},
                              {"crossings", count}});
    }
    Json pairs = Json::array();
    for (const auto& p : r.pairs)
        pairs.push_back(Json{{"from", p.from}, {"to", p.to}, {"crossings", p.crossings}, {"orbits", p.orbits},
                             {"signs", p.signs}});
    return Json{{"window", {{"arclength_budget", num(r.options.arclength_budget)}, {"k_max", r.k_max}}},
                {"crossing_count", r.crossings.size()},
                {"orbit_count", r.heteroclinic_orbits.size()},
                {"pairs", pairs},
                {"orbits", orbits}};
}

Json layers_json(const AnalysisReport& r) {
    const auto& L = r.graph.layers;
    Json saddle_layers = Json::array();
    for (size_t i = 1; i + 1 < L.size(); ++i) saddle_layers.push_back(L[i]);
    Json edges = Json::array();
    for (const auto& e : r.graph.edges)
        edges.push_back(Json{{"from", e.from},
                             {"to", e.to},
                             {"type", e.kind == EdgeKind::Heteroclinic ? "saddle" : "basin"},
                             {"transitive", e.transitive},
                             {"witnesses", e.witnesses}});
    return Json{{"sinks", L.empty() ? Json::array() : Json(L.front())},
                {"saddles", saddle_layers},
                {"sources", L.size() < 2 ? Json::array() : Json(L.back())},
                {"edges", edges}};
}

Json projected_json(const ProjectedCurve& c) {
    return Json{{"winding", c.winding}, {"closed", c.closed}, {"closure_gap", num(c.closure_gap)},
                {"gluing_crossings", c.gluing_thetas.size()}};
}

Json quotients_json(const AnalysisReport& r) {
    Json out = Json::array();
    for (const auto& q : r.quotients) {
        Json curves = Json::array();
        for (const auto& c : q.curves) {
            Json j{{"separatrix", c.separatrix}, {"saddle", c.saddle}, {"branch", branch_name(c.branch)},
                   {"m_gamma", c.m_gamma}, {"expected_winding", c.expected_winding}};
            j.update(projected_json(c.curve));
            Json b = Json::array();
            for (const auto& bc : c.boundary) b.push_back(projected_json(bc));
            j["boundary"] = b;
            j["error"] = c.error.empty() ? Json(nullptr) : Json(c.error);
            curves.push_back(j);
        }
        out.push_back(Json{{"sink", q.sink},
                           {"m_omega", q.chart.period},
                           {"m_V", q.chart.components},
                           {"r", num(q.chart.r)},
                           {"curves", curves},
                           {"error", q.error.empty() ? Json(nullptr) : Json(q.error)}});
    }
    return out;
}

// Small SVG helper with a fixed numeric format.
class Svg {
public:
    Svg(double w, double h) : w_(w), h_(h) {}
    std::ostringstream body;

    static std::string f(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v);
        return buf;
    }
    void line(double x0, double y0, double x1, double y1, const std::string& style) {
        body << "<line x1=\"" << f(x0) << "\" y1=\"" << f(y0) << "\" x2=\"" << f(x1) << "\" y2=\"" << f(y1)
             << "\" " << style << "/>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
        if (pts.size() < 2) return;
        body << "<polyline fill=\"none\" " << style << " points=\"";
        for (size_t i = 0; i < pts.size(); ++i) body << (i ? " " : "") << f(pts[i].first) << "," << f(pts[i].second);
        body << "\"/>\n";
    }
    void circle(double x, double y, double r, const std::string& style) {
        body << "<circle cx=\"" << f(x) << "\" cy=\"" << f(y) << "\" r=\"" << f(r) << "\" " << style << "/>\n";
    }
    void text(double x, double y, const std::string& s, int size = 12) {
        body << "<text x=\"" << f(x) << "\" y=\"" << f(y) << "\" font-size=\"" << size
             << "\" font-family=\"sans-serif\">" << escape(s) << "</text>\n";
    }
    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '<') out += "&lt;";
            else if (c == '>') out += "&gt;";
            else if (c == '&') out += "&amp;";
            else out += c;
        }
        return out;
    }
    std::string str() const {
        std::ostringstream o;
        o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(w_) << "\" height=\"" << f(h_)
          << "\" viewBox=\"0 0 " << f(w_) << " " << f(h_) << "\">\n"
          << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
          << body.str() << "</svg>\n";
        return o.str();
    }

private:
    double w_, h_;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

const char* orbit_color(OrbitKind k) {
    switch (k) {
        case OrbitKind::Sink: return "#2166ac";
        case OrbitKind::Source: return "#b2182b";
        default: return "#000000";
    }
}

// Point in the drawing plane: chart 0 coordinates (sphere chart 1 inverted).
bool plane_coords(const AnalysisReport& r, const SurfacePoint& p, Vec2& out) {
    if (r.surface == SurfaceKind::Sphere && p.chart == 1) {
        double n = dot(p.coords, p.coords);
        if (n < 1e-12) return false;
        out = p.coords * (1.0 / n);
        return true;
    }
    out = p.coords;
    return true;
}

Box view_box(const AnalysisReport& r) {
    if (r.surface == SurfaceKind::Torus) return Box{{0, 0}, {1, 1}};
    if (r.surface == SurfaceKind::Sphere) return Box{{-2.5, -2.5}, {2.5, 2.5}};
    if (!r.search_boxes.empty()) return r.search_boxes.front();
    return Box{{-2, -2}, {2, 2}};
}

}  // namespace

std::string report_json(const AnalysisReport& r) {
    Json j;
    j["map"] = map_json(r);
    j["orbits"] = orbits_json(r);
    j["separatrices"] = separatrices_json(r);
    j["heteroclinic"] = heteroclinic_json(r);
    j["orientability"] = orientability_name(r.orientability);
    j["beh"] = r.graph.beh;
    j["layers"] = layers_json(r);
    j["quotients"] = quotients_json(r);
    j["theorem"] = Json{{"verdict", r.theorem.pass ? "PASS" : "FAIL"},
                        {"orientable", r.theorem.orientable},
                        {"beh", r.theorem.beh},
                        {"diagnostic", r.theorem.diagnostic}};
    return j.dump(2) + "\n";
}

std::string separatrices_csv(const AnalysisReport& r) {
    std::ostringstream o;
    o << "separatrix_id,vertex_index,chart_id,x1,x2\n";
    char buf[64];
    for (const auto& s : r.separatrices) {
        const auto& poly = s.polyline();
        for (size_t i = 0; i < poly.size(); ++i) {
            o << s.id << ',' << i << ',' << poly[i].chart;
            for (double v : {poly[i].coords.x, poly[i].coords.y}) {
                std::snprintf(buf, sizeof buf, ",%.12g", round12(v));
                o << buf;
            }
            o << '\n';
        }
    }
    return o.str();
}

std::string graph_dot(const AnalysisReport& r) { return to_dot(r.graph, r.map_name); }

std::string phase_svg(const AnalysisReport& r) {
    const double size = 640, pad = 40;
    Box vb = view_box(r);
    double sx = (size - 2 * pad) / (vb.hi.x - vb.lo.x);
    double sy = (size - 2 * pad) / (vb.hi.y - vb.lo.y);
    auto X = [&](Vec2 p) { return pad + (p.x - vb.lo.x) * sx; };
    auto Y = [&](Vec2 p) { return size - pad - (p.y - vb.lo.y) * sy; };
    auto inside = [&](Vec2 p) {
        return p.x >= vb.lo.x && p.x <= vb.hi.x && p.y >= vb.lo.y && p.y <= vb.hi.y;
    };
    Svg svg(size, size + 40);
    svg.body << "<rect x=\"" << Svg::f(pad) << "\" y=\"" << Svg::f(pad) << "\" width=\"" << Svg::f(size - 2 * pad)
             << "\" height=\"" << Svg::f(size - 2 * pad) << "\" fill=\"none\" stroke=\"#999\"/>\n";
    // Break polylines at torus wraps, chart jumps and the view boundary.
    double jump = r.surface == SurfaceKind::Torus ? 0.5 : 1.0;
    for (const auto& s : r.separatrices) {
        bool unstable = s.stability == Stability::Unstable;
        std::string style = std::string("stroke=\"") + (unstable ? "#d62728" : "#1f77b4") + "\" stroke-width=\"1\"";
        std::vector<std::pair<double, double>> run;
        Vec2 prev{};
        bool have = false;
        for (const auto& p : s.polyline()) {
            Vec2 q;
            if (!plane_coords(r, p, q) || !inside(q) || (have && norm(q - prev) > jump)) {
                svg.polyline(run, style);
                run.clear();
                have = false;
                if (!plane_coords(r, p, q) || !inside(q)) continue;
            }
            run.emplace_back(X(q), Y(q));
            prev = q;
            have = true;
        }
        svg.polyline(run, style);
    }
    for (const auto& h : r.crossings) {
        Vec2 q;
        if (!plane_coords(r, h.refined_location, q) || !inside(q)) continue;
        svg.circle(X(q), Y(q), 3, h.sign > 0 ? "fill=\"#1a9850\"" : "fill=\"#f46d43\" stroke=\"black\"");
    }
    for (const auto& o : r.orbits)
        for (const auto& p : o.points) {
            Vec2 q;
            if (!plane_coords(r, p, q) || !inside(q)) continue;
            svg.circle(X(q), Y(q), 5, std::string("fill=\"") + orbit_color(o.kind) + "\" stroke=\"white\"");
            svg.text(X(q) + 6, Y(q) - 6, "O" + std::to_string(o.id), 11);
        }
    std::ostringstream cap;
    cap << r.map_name << " (" << surface_name(r.surface) << "): " << orientability_name(r.orientability)
        << ", beh=" << r.graph.beh << ", theorem " << (r.theorem.pass ? "PASS" : "FAIL");
    svg.text(pad, size + 4, cap.str(), 12);
    svg.text(pad, size + 22, "red W^u, blue W^s; heteroclinic points green (+1) or orange (-1)", 12);
    return svg.str();
}

std::string quotient_svg(const AnalysisReport& r, const QuotientSummary& q) {
    const double size = 560, c0 = size / 2, outer = 240, inner = 100;
    Svg svg(size, size + 40);
    // s = 0 on the outer circle C, s -> 1 towards f^m(C); the two boundary
    // circles are glued.
    auto at = [&](double s, double theta) {
        double rad = outer - s * (outer - inner);
        double a = 2 * std::numbers::pi * theta;
        return std::pair<double, double>{c0 + rad * std::cos(a), c0 - rad * std::sin(a)};
    };
    svg.circle(c0, c0, outer, "fill=\"none\" stroke=\"#555\" stroke-dasharray=\"6,4\"");
    svg.circle(c0, c0, inner, "fill=\"none\" stroke=\"#555\" stroke-dasharray=\"6,4\"");
    int line = 0;
    for (const auto& c : q.curves) {
        std::string color = kPalette[static_cast<size_t>(c.saddle) % 8];
        auto draw = [&](const ProjectedCurve& pc, const std::string& style) {
            for (const auto& arc : pc.arcs) {
                std::vector<std::pair<double, double>> pts;
                for (const auto& v : arc) pts.push_back(at(v.x, v.y));
                svg.polyline(pts, "stroke=\"" + color + "\" " + style);
            }
        };
        for (const auto& b : c.boundary) draw(b, "stroke-width=\"0.8\" stroke-opacity=\"0.5\"");
        draw(c.curve, "stroke-width=\"1.6\"");
        for (double th : c.curve.gluing_thetas) {
            auto [x, y] = at(0.0, th);
            svg.circle(x, y, 4, "fill=\"" + color + "\" class=\"gluing-crossing\"");
        }
        std::ostringstream t;
        t << "S" << c.separatrix << " (O" << c.saddle << ") winding " << c.curve.winding
          << (c.curve.closed ? "" : " (open)");
        svg.text(10, 18 + 16 * line++, t.str(), 12);
    }
    std::ostringstream cap;
    cap << r.map_name << ": basin of O" << q.sink << ", m_omega=" << q.chart.period << ", r=" << q.chart.r;
    svg.text(10, size + 4, cap.str(), 12);
    svg.text(10, size + 22, "the dashed circles are identified by f^m_omega", 12);
    return svg.str();
}

std::vector<std::string> emit_outputs(const AnalysisReport& r, const std::string& dir,
                                      const std::vector<std::string>& formats) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir + ": " + ec.message());
    std::vector<std::string> written;
    auto put = [&](const std::string& name, const std::string& text) {
        fs::path p = fs::path(dir) / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw Error(ErrorKind::IoError, "cannot write " + p.string());
        f << text;
        if (!f) throw Error(ErrorKind::IoError, "write failed for " + p.string());
        written.push_back(p.string());
    };
    for (const auto& fmt : formats) {
        if (fmt == "json") put("report.json", report_json(r));
        else if (fmt == "csv") put("separatrices.csv", separatrices_csv(r));
        else if (fmt == "dot") put("graph.dot", graph_dot(r));
        else if (fmt == "svg") {
            put("phase.svg", phase_svg(r));
            for (const auto& q : r.quotients) put("quotient_" + std::to_string(q.sink) + ".svg", quotient_svg(r, q));
        } else
            throw Error(ErrorKind::InvalidArgument, "unknown format '" + fmt + "'");
    }
    return written;
}

}  // namespace mss
