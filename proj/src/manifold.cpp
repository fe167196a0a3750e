#include "mss/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mss/error.hpp"

namespace mss {

SurfacePoint curve_point(const MapSpec& m, const CurveSeed& seed, double t) {
    double n = std::floor(t);
    SurfacePoint p = m.surface.normalize(seed.at(t - n));
    return apply_map(m, p, seed.power * static_cast<int>(n));
}

namespace {

struct Node {
    double t;
    SurfacePoint p;
};

// Splits [a, b] until it is shorter than max_step and its chord stays within
// chord_tol of the curve; appends the new interior nodes and b to out.
void subdivide(const MapSpec& m, const CurveSeed& seed, const GrowthOptions& o, const Node& a, const Node& b,
               std::vector<Node>& out, size_t& budget_left, int depth) {
    const SurfaceModel& s = m.surface;
    Vec2 d = s.displacement(a.p, b.p);
    double len = norm(d);
    bool can = depth < 60 && budget_left > 0 && b.t - a.t > 1e-13 * std::max(1.0, std::abs(a.t));
    if (can && len > o.chord_tol) {
        double tm = 0.5 * (a.t + b.t);
        Node mid{tm, curve_point(m, seed, tm)};
        // Distance of the curve midpoint from the chord line.
        double off = std::abs(cross(d, s.displacement(a.p, mid.p))) / len;
        if (len > o.max_step || off > o.chord_tol) {
            --budget_left;
            subdivide(m, seed, o, a, mid, out, budget_left, depth + 1);
            subdivide(m, seed, o, mid, b, out, budget_left, depth + 1);
            return;
        }
    }
    out.push_back(b);
}

void refine(const MapSpec& m, const CurveSeed& seed, const GrowthOptions& o, std::vector<Node>& nodes,
            size_t& budget_left) {
    if (nodes.size() < 2) return;
    std::vector<Node> fine{nodes.front()};
    fine.reserve(nodes.size() * 2);
    for (size_t i = 0; i + 1 < nodes.size(); ++i) subdivide(m, seed, o, nodes[i], nodes[i + 1], fine, budget_left, 0);
    nodes = std::move(fine);

    // Turning angles; rarely active once chords are accurate.
    const SurfaceModel& s = m.surface;
    const double max_angle = o.max_angle_deg * std::numbers::pi / 180.0;
    auto splittable = [](const Node& a, const Node& b) {
        return b.t - a.t > 1e-13 * std::max(1.0, std::abs(a.t));
    };
    auto split = [&](size_t i) {
        double tm = 0.5 * (nodes[i].t + nodes[i + 1].t);
        nodes.insert(nodes.begin() + static_cast<long>(i) + 1, Node{tm, curve_point(m, seed, tm)});
        if (budget_left > 0) --budget_left;
    };
    for (size_t i = 1; i + 1 < nodes.size() && budget_left > 0; ++i) {
        Vec2 d = s.displacement(nodes[i].p, nodes[i + 1].p);
        Vec2 dp = s.displacement(nodes[i - 1].p, nodes[i].p);
        double len = norm(d), lp = norm(dp);
        if (len <= o.angle_min_length || lp <= o.angle_min_length) continue;
        double ang = std::atan2(std::abs(cross(dp, d)), dot(dp, d));
        if (ang <= max_angle) continue;
        if (lp > len && splittable(nodes[i - 1], nodes[i])) {
            split(i - 1);
            i = std::max<size_t>(1, i - 1) - 1;
        } else if (splittable(nodes[i], nodes[i + 1])) {
            split(i);
            --i;
        }
    }
}

int terminal_orbit_of(const SurfaceModel& s, const std::vector<Node>& nodes,
                      const std::vector<LinearizingChart>& boxes) {
    if (boxes.empty()) return -1;
    int found = -1;
    for (const Node& n : nodes) {
        int hit = -1;
        for (const auto& b : boxes) {
            if (b.contains(s, n.p)) {
                hit = b.owner;
                break;
            }
        }
        if (hit < 0) return -1;
        if (found >= 0 && hit != found) return -1;
        found = hit;
    }
    return found;
}

}  // namespace

GrownCurve grow_curve(const MapSpec& m, const CurveSeed& seed, const GrowthOptions& o,
                      const std::vector<LinearizingChart>& terminal_boxes) {
    const SurfaceModel& s = m.surface;
    GrownCurve out;
    size_t budget_left = static_cast<size_t>(o.max_vertices);
    std::vector<Node> gen;
    const int samples = 16;

    auto append = [&](const Node& n) {
        if (!out.polyline.empty()) out.arclength += s.distance(out.polyline.back(), n.p);
        out.polyline.push_back(n.p);
        out.params.push_back(n.t);
        return out.arclength < o.arclength_budget;
    };

    try {
        for (int k = 0; k < samples; ++k) {
            double t = static_cast<double>(k) / (samples - 1);
            gen.push_back({t, curve_point(m, seed, t)});
        }
        refine(m, seed, o, gen, budget_left);
        for (const Node& n : gen) {
            if (!append(n)) {
                out.truncated = true;
                return out;
            }
        }
        for (int g = 1; g < o.max_generations; ++g) {
            std::vector<Node> next;
            next.reserve(gen.size());
            for (const Node& n : gen) next.push_back({n.t + 1.0, apply_map(m, n.p, seed.power)});
            refine(m, seed, o, next, budget_left);
            for (size_t i = 1; i < next.size(); ++i) {
                if (!append(next[i])) {
                    out.truncated = true;
                    return out;
                }
            }
            int term = terminal_orbit_of(s, next, terminal_boxes);
            if (term >= 0) {
                out.terminal_orbit = term;
                return out;
            }
            if (budget_left == 0) {
                out.truncated = true;
                return out;
            }
            gen = std::move(next);
        }
        out.truncated = true;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ChartEscape) throw;
        out.escaped = true;
        out.truncated = true;
    }
    return out;
}

Branch Separatrix::branch() const {
    if (stability == Stability::Unstable) return side > 0 ? Branch::UnstablePlus : Branch::UnstableMinus;
    return side > 0 ? Branch::StablePlus : Branch::StableMinus;
}

CurveSeed Separatrix::seed() const {
    CurveSeed c;
    c.power = power();
    SurfacePoint b = base;
    Vec2 dir = direction;
    double e = eps;
    double lam = multiplier;
    c.at = [b, dir, e, lam](double frac) {
        return SurfacePoint{b.chart, b.coords + dir * (e * std::pow(lam, frac))};
    };
    return c;
}

std::string Separatrix::label() const {
    return "O" + std::to_string(owner) + "." + std::to_string(point_index) + ":" + branch_name(branch());
}

Separatrix grow_separatrix(const MapSpec& m, const PeriodicOrbit& o, Branch branch, const GrowthOptions& opts,
                           const std::vector<LinearizingChart>& terminal_boxes, int point_index) {
    if (o.kind != OrbitKind::Saddle) throw Error(ErrorKind::NotASaddle, "separatrices exist only for saddles");
    bool unstable = is_unstable(branch);
    if (!unstable && !m.has_inverse())
        throw Error(ErrorKind::NoInverse, "stable separatrices need the inverse map");
    Separatrix s;
    s.owner = o.id;
    s.point_index = point_index;
    s.stability = unstable ? Stability::Unstable : Stability::Stable;
    s.side = branch_side(branch);
    s.period = separatrix_period(o, branch);
    s.base = o.points[static_cast<size_t>(point_index)];
    const auto& ev = o.eigenvectors[static_cast<size_t>(point_index)];
    s.direction = (unstable ? ev[1] : ev[0]) * static_cast<double>(s.side);
    s.eps = opts.eps;
    double lam = unstable ? std::abs(o.lambda_u()) : 1.0 / std::abs(o.lambda_s());
    s.multiplier = std::pow(lam, s.period / o.period);
    s.arclength_budget = opts.arclength_budget;
    s.curve = grow_curve(m, s.seed(), opts, terminal_boxes);
    if (s.curve.params.back() >= 2.0) s.invariance_residual = invariance_residual(m, s);
    return s;
}

SurfacePoint separatrix_point(const MapSpec& m, const Separatrix& s, double t) {
    return curve_point(m, s.seed(), t);
}

std::pair<SurfacePoint, Vec2> curve_tangent(const MapSpec& m, const CurveSeed& seed, double t, double h) {
    SurfacePoint p = curve_point(m, seed, t);
    double lo = std::max(0.0, t - h);
    SurfacePoint a = curve_point(m, seed, lo);
    SurfacePoint b = curve_point(m, seed, t + h);
    Vec2 d = m.surface.displacement(p, b) - m.surface.displacement(p, a);
    return {p, normalized(d)};
}

double distance_to_polyline(const SurfaceModel& s, const SurfacePoint& p, const std::vector<SurfacePoint>& poly,
                            size_t first, size_t last) {
    if (poly.empty()) return 1e300;
    last = std::min(last, poly.size() - 1);
    double best = 1e300;
    if (first >= last) return s.distance(poly[std::min(first, poly.size() - 1)], p);
    for (size_t i = first; i < last; ++i) {
        Vec2 ab = s.displacement(poly[i], poly[i + 1]);
        Vec2 ap = s.displacement(poly[i], p);
        double l2 = dot(ab, ab);
        double u = l2 > 0 ? std::clamp(dot(ap, ab) / l2, 0.0, 1.0) : 0.0;
        best = std::min(best, norm(ap - ab * u));
    }
    return best;
}

double curve_invariance_residual(const MapSpec& m, const GrownCurve& c, int power) {
    const auto& t = c.params;
    if (t.empty() || t.back() < 2.0) throw Error(ErrorKind::TooShort, "polyline spans fewer than two fundamental segments");
    const SurfaceModel& s = m.surface;
    double worst = 0.0;
    double limit = t.back() - 1.0;
    // Vertices and chord midpoints: the polyline as a set must map into itself.
    auto check = [&](const SurfacePoint& x, double tx) {
        SurfacePoint y = apply_map(m, x, power);
        size_t j = static_cast<size_t>(std::upper_bound(t.begin(), t.end(), tx + 1.0) - t.begin());
        j = j > 0 ? j - 1 : 0;
        size_t lo = j > 3 ? j - 3 : 0;
        double d = distance_to_polyline(s, y, c.polyline, lo, j + 4);
        if (d > 1e-6) d = std::min(d, distance_to_polyline(s, y, c.polyline));
        worst = std::max(worst, d);
    };
    for (size_t k = 0; k < t.size() && t[k] < limit; ++k) {
        check(c.polyline[k], t[k]);
        if (k + 1 < t.size() && t[k + 1] < limit) {
            const SurfacePoint& a = c.polyline[k];
            Vec2 half = s.displacement(a, c.polyline[k + 1]) * 0.5;
            check(s.normalize({a.chart, a.coords + half}), 0.5 * (t[k] + t[k + 1]));
        }
    }
    return worst;
}

double invariance_residual(const MapSpec& m, const Separatrix& s) {
    return curve_invariance_residual(m, s.curve, s.power());
}

}  // namespace mss
