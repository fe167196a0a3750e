#include "mss/heteroclinic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "mss/error.hpp"

namespace mss {

bool segment_intersection(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1, double& tu, double& ts) {
    Vec2 r = p1 - p0;
    Vec2 q = q1 - q0;
    double denom = cross(r, q);
    if (denom == 0.0) return false;
    Vec2 w = q0 - p0;
    tu = cross(w, q) / denom;
    ts = cross(w, r) / denom;
    return tu >= 0.0 && tu < 1.0 && ts >= 0.0 && ts < 1.0;
}

std::vector<Segment> polyline_segments(const SurfaceModel& s, const std::vector<SurfacePoint>& poly) {
    std::vector<Segment> out;
    if (poly.size() < 2) return out;
    out.reserve(poly.size());
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
        const SurfacePoint& a = poly[i];
        const SurfacePoint& b = poly[i + 1];
        switch (s.kind()) {
            case SurfaceKind::Plane:
                out.push_back({a.coords, b.coords, 0, i});
                break;
            case SurfaceKind::Torus:
                out.push_back({a.coords, a.coords + s.displacement(a, b), 0, i});
                break;
            case SurfaceKind::Sphere:
                for (int c = 0; c < 2; ++c) {
                    auto ac = s.express(a, c);
                    auto bc = s.express(b, c);
                    if (ac && bc && norm(*ac) < 3.0 && norm(*bc) < 3.0) out.push_back({*ac, *bc, c, i});
                }
                break;
        }
    }
    return out;
}

std::vector<Vec2> comparison_translates(const SurfaceModel& s) {
    if (s.kind() != SurfaceKind::Torus) return {Vec2{0, 0}};
    std::vector<Vec2> t;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy) t.push_back({static_cast<double>(dx), static_cast<double>(dy)});
    return t;
}

bool Crossing::operator<(const Crossing& o) const {
    return std::tie(seg_u, seg_s, chart) < std::tie(o.seg_u, o.seg_s, o.chart);
}

namespace {

struct SweepItem {
    double xmin, xmax, ymin, ymax;
    int set;  // 0 unstable, 1 stable
    Segment seg;
};

SweepItem make_item(const Segment& s, int set) {
    return {std::min(s.a.x, s.b.x), std::max(s.a.x, s.b.x), std::min(s.a.y, s.b.y), std::max(s.a.y, s.b.y), set, s};
}

std::vector<Crossing> unique_crossings(std::vector<Crossing> c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end(),
                        [](const Crossing& a, const Crossing& b) { return a.seg_u == b.seg_u && a.seg_s == b.seg_s; }),
            c.end());
    return c;
}

}  // namespace

std::vector<Crossing> find_crossings(const SurfaceModel& s, const std::vector<SurfacePoint>& unstable,
                                     const std::vector<SurfacePoint>& stable) {
    std::vector<Segment> su = polyline_segments(s, unstable);
    std::vector<Segment> ss = polyline_segments(s, stable);
    std::vector<SweepItem> items;
    items.reserve(su.size() + ss.size() * 9);
    for (const auto& seg : su) items.push_back(make_item(seg, 0));
    for (Vec2 t : comparison_translates(s)) {
        for (const auto& seg : ss) {
            Segment moved = seg;
            moved.a += t;
            moved.b += t;
            items.push_back(make_item(moved, 1));
        }
    }
    std::sort(items.begin(), items.end(), [](const SweepItem& a, const SweepItem& b) {
        return std::tie(a.xmin, a.set, a.seg.index) < std::tie(b.xmin, b.set, b.seg.index);
    });

    std::vector<Crossing> out;
    std::vector<const SweepItem*> active[2];
    for (const SweepItem& it : items) {
        for (auto& list : active) {
            list.erase(std::remove_if(list.begin(), list.end(),
                                      [&](const SweepItem* a) { return a->xmax < it.xmin; }),
                       list.end());
        }
        for (const SweepItem* other : active[1 - it.set]) {
            if (other->seg.chart != it.seg.chart) continue;
            if (other->ymax < it.ymin || it.ymax < other->ymin) continue;
            const SweepItem& u = it.set == 0 ? it : *other;
            const SweepItem& v = it.set == 0 ? *other : it;
            double tu, ts;
            if (segment_intersection(u.seg.a, u.seg.b, v.seg.a, v.seg.b, tu, ts)) {
                Crossing c;
                c.seg_u = u.seg.index;
                c.seg_s = v.seg.index;
                c.tu = tu;
                c.ts = ts;
                c.chart = u.seg.chart;
                c.point = u.seg.a + (u.seg.b - u.seg.a) * tu;
                out.push_back(c);
            }
        }
        active[it.set].push_back(&it);
    }
    return unique_crossings(std::move(out));
}

namespace {

struct RefineResult {
    bool ok = false;
    double tu = 0, ts = 0;
    SurfacePoint point;
    Vec2 du, ds;
    double residual = 1e300;
};

RefineResult refine_crossing(const MapSpec& m, const CurveSeed& cu, const CurveSeed& cs, double tu, double ts,
                             double gap_u, double gap_s) {
    const SurfaceModel& s = m.surface;
    double hu = std::max(1e-11, 1e-3 * gap_u);
    double hs = std::max(1e-11, 1e-3 * gap_s);
    const double tu0 = tu, ts0 = ts;
    RefineResult best;
    int stall = 0;
    for (int it = 0; it < 40; ++it) {
        SurfacePoint pu = curve_point(m, cu, tu);
        SurfacePoint ps = curve_point(m, cs, ts);
        // Residual and tangents in pu's chart.
        Vec2 r = -s.displacement(pu, ps);
        Vec2 du = (s.displacement(pu, curve_point(m, cu, tu + hu)) -
                   s.displacement(pu, curve_point(m, cu, std::max(0.0, tu - hu)))) /
                  (tu + hu - std::max(0.0, tu - hu));
        Vec2 ds = (s.displacement(pu, curve_point(m, cs, ts + hs)) -
                   s.displacement(pu, curve_point(m, cs, std::max(0.0, ts - hs)))) /
                  (ts + hs - std::max(0.0, ts - hs));
        double rn = norm(r);
        if (rn < best.residual) {
            best = {true, tu, ts, pu, du, ds, rn};
            stall = 0;
        } else if (++stall >= 3) {
            break;
        }
        if (rn < 1e-14) break;
        Mat2 j = Mat2::columns(du, -ds);
        if (std::abs(j.det()) < 1e-300) break;
        Vec2 step = j.inverse() * (-r);
        tu += step.x;
        ts += step.y;
        if (tu < 0 || ts < 0) break;
        if (std::abs(tu - tu0) > 8 * gap_u + 1e-12 || std::abs(ts - ts0) > 8 * gap_s + 1e-12) break;
    }
    return best;
}

}  // namespace

int default_k_max(int max_separatrix_period, double arclength_budget) {
    return 3 * max_separatrix_period * static_cast<int>(std::ceil(arclength_budget));
}

std::vector<HeteroclinicPoint> detect_intersections(const MapSpec& m, const Separatrix& su, const Separatrix& ss) {
    if (su.stability != Stability::Unstable || ss.stability != Stability::Stable)
        throw Error(ErrorKind::InvalidArgument, "detect_intersections expects an unstable and a stable separatrix");
    if (su.owner == ss.owner && su.owner >= 0)
        throw Error(ErrorKind::InvalidArgument, "separatrices of the same saddle orbit (homoclinic) are out of scope");
    const SurfaceModel& s = m.surface;
    const auto& pu = su.polyline();
    const auto& ps = ss.polyline();
    const auto& tu = su.params();
    const auto& ts = ss.params();
    CurveSeed cu = su.seed();
    CurveSeed cs = ss.seed();
    std::vector<HeteroclinicPoint> out;
    for (const Crossing& c : find_crossings(s, pu, ps)) {
        HeteroclinicPoint h;
        h.location = s.normalize({c.chart, c.point});
        h.from_saddle = su.owner;
        h.to_saddle = ss.owner;
        h.unstable_separatrix = su.id;
        h.stable_separatrix = ss.id;
        h.seg_u = c.seg_u;
        h.seg_s = c.seg_s;
        double gap_u = tu[c.seg_u + 1] - tu[c.seg_u];
        double gap_s = ts[c.seg_s + 1] - ts[c.seg_s];
        double t_u0 = tu[c.seg_u] + gap_u * c.tu;
        double t_s0 = ts[c.seg_s] + gap_s * c.ts;
        RefineResult r = refine_crossing(m, cu, cs, t_u0, t_s0, gap_u, gap_s);
        Vec2 du, ds;
        SurfacePoint base;
        if (r.ok && r.residual < 1e-9) {
            h.refined = true;
            h.param_u = r.tu;
            h.param_s = r.ts;
            h.refine_residual = r.residual;
            du = normalized(r.du);
            ds = normalized(r.ds);
            // Intersect the two tangent lines to remove the residual
            // tangential round-off of the parametrization.
            SurfacePoint ps_pt = curve_point(m, cs, r.ts);
            Vec2 gap = s.displacement(r.point, ps_pt);
            Mat2 j = Mat2::columns(du, -ds);
            Vec2 ab = std::abs(j.det()) > 1e-12 ? j.inverse() * gap : Vec2{0, 0};
            base = {r.point.chart, r.point.coords + du * ab.x};
        } else {
            h.refined = false;
            h.param_u = t_u0;
            h.param_s = t_s0;
            h.refine_residual = r.residual;
            Vec2 a = s.displacement(pu[c.seg_u], pu[c.seg_u + 1]);
            Vec2 b = s.displacement(ps[c.seg_s], ps[c.seg_s + 1]);
            du = normalized(a);
            ds = normalized(b);
            base = {c.chart, c.point};
        }
        SurfacePoint loc = s.normalize(base);
        if (loc.chart != base.chart) {
            Mat2 tj = s.transition_jacobian(base.chart, loc.chart, base.coords);
            du = normalized(tj * du);
            ds = normalized(tj * ds);
        }
        h.refined_location = loc;
        h.v_u = du;
        h.v_s = -ds;
        if (std::abs(cross(h.v_u, h.v_s)) < 1e-8)
            throw Error(ErrorKind::TangencyDetected, "non-transversal crossing between " + su.label() + " and " + ss.label());
        h.sign = s.frame_sign(loc, h.v_u, h.v_s);
        out.push_back(h);
    }
    return out;
}

std::vector<HeteroclinicPoint> dedup_by_orbit(std::vector<HeteroclinicPoint>& pts, const MapSpec& m, int k_max) {
    const size_t n = pts.size();
    if (n == 0) return {};
    const SurfaceModel& s = m.surface;
    const int half = (k_max + 1) / 2;
    std::vector<std::vector<SurfacePoint>> fwd(n), bwd(n);
    for (size_t i = 0; i < n; ++i) {
        fwd[i].push_back(pts[i].refined_location);
        bwd[i].push_back(pts[i].refined_location);
        try {
            for (int k = 0; k < half; ++k) fwd[i].push_back(apply_map(m, fwd[i].back(), 1));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ChartEscape) throw;
        }
        if (m.has_inverse()) {
            try {
                for (int k = 0; k < half; ++k) bwd[i].push_back(apply_map(m, bwd[i].back(), -1));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::ChartEscape) throw;
            }
        }
    }
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    // x_j = f^k(x_i) tested as f^a(x_i) = f^-b(x_j) with a + b = k, a ~ b, so
    // the refinement error is amplified by only half of the iterates.
    auto related = [&](size_t i, size_t j) {
        for (int k = 0; k <= k_max; ++k) {
            size_t a = static_cast<size_t>(k / 2);
            size_t b = static_cast<size_t>(k - k / 2);
            if (a < fwd[i].size() && b < bwd[j].size() && s.distance(fwd[i][a], bwd[j][b]) < 1e-8) return true;
            if (a < fwd[j].size() && b < bwd[i].size() && s.distance(fwd[j][a], bwd[i][b]) < 1e-8) return true;
        }
        return false;
    };
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (pts[i].from_saddle != pts[j].from_saddle || pts[i].to_saddle != pts[j].to_saddle) continue;
            if (find(i) == find(j)) continue;
            if (related(i, j)) parent[find(i)] = find(j);
        }
    }
    // Representative: nearest to the stable saddle along the stable curve.
    auto rep_less = [&](size_t a, size_t b) {
        const auto& p = pts[a];
        const auto& q = pts[b];
        return std::tie(p.param_s, p.stable_separatrix, p.seg_u) < std::tie(q.param_s, q.stable_separatrix, q.seg_u);
    };
    std::vector<size_t> rep_of(n, n);
    for (size_t i = 0; i < n; ++i) {
        size_t r = find(i);
        if (rep_of[r] == n || rep_less(i, rep_of[r])) rep_of[r] = i;
    }
    std::vector<size_t> reps;
    for (size_t i = 0; i < n; ++i)
        if (find(i) == i) reps.push_back(rep_of[i]);
    std::sort(reps.begin(), reps.end(), [&](size_t a, size_t b) {
        const auto& p = pts[a];
        const auto& q = pts[b];
        return std::tie(p.from_saddle, p.to_saddle, p.stable_separatrix, p.param_s, p.seg_u) <
               std::tie(q.from_saddle, q.to_saddle, q.stable_separatrix, q.param_s, q.seg_u);
    });
    std::vector<int> id_of_root(n, -1);
    std::vector<HeteroclinicPoint> out;
    for (size_t k = 0; k < reps.size(); ++k) id_of_root[find(reps[k])] = static_cast<int>(k);
    for (size_t i = 0; i < n; ++i) pts[i].orbit_id = id_of_root[find(i)];
    for (size_t r : reps) out.push_back(pts[r]);
    return out;
}

const char* orientability_name(Orientability o) {
    switch (o) {
        case Orientability::Orientable: return "orientable";
        case Orientability::NonOrientable: return "non-orientable";
        case Orientability::Vacuous: return "vacuous";
    }
    return "vacuous";
}

Orientability classify_orientability(const std::vector<HeteroclinicPoint>& pts) {
    if (pts.empty()) return Orientability::Vacuous;
    for (const auto& p : pts)
        if (p.sign != pts.front().sign) return Orientability::NonOrientable;
    return Orientability::Orientable;
}

}  // namespace mss
