#include "mss/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mss/error.hpp"

namespace mss {

QuotientChart build_sink_quotient(const MapSpec& m, const PeriodicOrbit& sink, double r) {
    if (sink.kind != OrbitKind::Sink) throw Error(ErrorKind::InvalidArgument, "quotients are built for sinks only");
    if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "quotient radius must be positive");
    if (!m.has_inverse()) throw Error(ErrorKind::NoInverse, "the orbit-space chart needs the inverse map");
    QuotientChart q;
    q.sink = sink.id;
    q.period = sink.period;
    q.components = sink.period;
    q.center = sink.points[0];
    const auto& v = sink.eigenvectors[0];
    if (std::abs(cross(normalized(v[0]), normalized(v[1]))) < 1e-8)
        throw Error(ErrorKind::DegenerateEigenframe, "sink eigenvectors are nearly collinear");
    q.frame = Mat2::columns(v[0], v[1]);
    q.frame_inv = q.frame.inverse();
    q.r = r;
    const SurfaceModel& s = m.surface;
    const int samples = 256;
    for (int k = 0; k < samples; ++k) {
        double a = 2.0 * std::numbers::pi * k / samples;
        Vec2 y{r * std::cos(a), r * std::sin(a)};
        SurfacePoint c = s.normalize({q.center.chart, q.center.coords + q.frame * y});
        SurfacePoint img = apply_map(m, c, q.period);
        if (!(q.rho(s, img) < r))
            throw Error(ErrorKind::NotTrapping, "image of the circle of radius " + std::to_string(r) +
                                                    " leaves its interior; decrease r");
    }
    return q;
}

AnnulusPoint project_point(const MapSpec& m, const QuotientChart& q, const SurfacePoint& x) {
    const SurfaceModel& s = m.surface;
    SurfacePoint y = x;
    int n = 0;
    int steps = 0;
    try {
        while (q.rho(s, y) > q.r) {
            y = apply_map(m, y, 1);
            ++n;
            if (++steps > q.max_steps) throw Error(ErrorKind::NotInBasin, "point never enters the sink's disk");
        }
        SurfacePoint z = apply_map(m, y, -q.period);
        while (q.rho(s, z) <= q.r) {
            y = z;
            n -= q.period;
            if (++steps > q.max_steps) throw Error(ErrorKind::NotInBasin, "point sits on the sink");
            z = apply_map(m, y, -q.period);
        }
        AnnulusPoint a;
        Vec2 ly = q.local(s, y);
        double ry = norm(ly);
        double rz = q.rho(s, z);
        a.s = std::log(q.r / ry) / std::log(rz / ry);
        if (a.s >= 1.0) a.s = std::nextafter(1.0, 0.0);
        if (a.s < 0.0) a.s = 0.0;
        double th = std::atan2(ly.y, ly.x) / (2.0 * std::numbers::pi);
        a.theta = th - std::floor(th);
        if (a.theta >= 1.0) a.theta = 0.0;
        a.level = n;
        a.representative = y;
        return a;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ChartEscape) throw Error(ErrorKind::NotInBasin, "orbit left the chart");
        throw;
    }
}

ProjectedCurve project_grown_curve(const MapSpec& m, const QuotientChart& q, const GrownCurve& c, int source) {
    const auto& t = c.params;
    if (t.empty() || t.back() < 1.0) throw Error(ErrorKind::NotInBasin, "curve has no complete fundamental segment");
    double n0 = std::floor(t.back()) - 1.0;
    if (n0 < 0) throw Error(ErrorKind::NotInBasin, "curve has no complete fundamental segment");
    auto first = std::lower_bound(t.begin(), t.end(), n0);
    auto last = std::lower_bound(t.begin(), t.end(), n0 + 1.0);
    if (first == t.end() || last == t.end()) throw Error(ErrorKind::NotInBasin, "fundamental segment not found");
    size_t i0 = static_cast<size_t>(first - t.begin());
    size_t i1 = static_cast<size_t>(last - t.begin());

    ProjectedCurve out;
    out.source = source;
    std::vector<AnnulusPoint> pts;
    for (size_t i = i0; i <= i1; ++i) pts.push_back(project_point(m, q, c.polyline[i]));
    int crossings = 0;
    out.arcs.emplace_back();
    for (size_t k = 0; k < pts.size(); ++k) {
        if (k > 0 && pts[k].level != pts[k - 1].level) {
            int dl = pts[k - 1].level - pts[k].level;
            crossings += dl / q.period;
            out.gluing_thetas.push_back(pts[k].theta);
            out.arcs.emplace_back();
        }
        out.arcs.back().push_back({pts[k].s, pts[k].theta});
    }
    double dth = pts.back().theta - pts.front().theta;
    dth -= std::round(dth);
    out.closure_gap = std::hypot(pts.back().s - pts.front().s, dth);
    out.closed = out.closure_gap < 1e-6;
    out.winding = crossings;
    return out;
}

ProjectedCurve project_curve(const MapSpec& m, const QuotientChart& q, const Separatrix& s) {
    if (s.stability != Stability::Unstable)
        throw Error(ErrorKind::InvalidArgument, "only unstable separatrices enter sink basins");
    return project_grown_curve(m, q, s.curve, s.id);
}

std::pair<ProjectedCurve, ProjectedCurve> project_neighborhood_boundary(const MapSpec& m, const QuotientChart& q,
                                                                        const PeriodicOrbit& saddle, Branch branch,
                                                                        const LinearizingChart& chart,
                                                                        const GrowthOptions& opts,
                                                                        const std::vector<LinearizingChart>& sinks) {
    if (!is_unstable(branch)) throw Error(ErrorKind::InvalidArgument, "boundary curves follow unstable branches");
    const SurfaceModel& s = m.surface;
    int side = branch_side(branch);
    int power = separatrix_period(saddle, branch);
    ProjectedCurve result[2];
    for (int k = 0; k < 2; ++k) {
        Vec2 p{k == 0 ? -1.0 : 1.0, static_cast<double>(side)};
        SurfacePoint q0 = chart.from_model(s, p);
        SurfacePoint q1 = apply_map(m, q0, power);
        Vec2 y = chart.to_model(s, q1);
        if (!(y.y * p.y > 0)) throw Error(ErrorKind::NotInBasin, "corner orbit leaves the branch side");
        double la = std::log(std::abs(p.y));
        double lb = std::log(std::abs(y.y));
        double ca = p.x * p.y;
        double cb = y.x * y.y;
        CurveSeed seed;
        seed.power = power;
        seed.at = [=, &s](double tau) {
            double x2 = side * std::exp(la + (lb - la) * tau);
            double c = ca + (cb - ca) * tau;
            return chart.from_model(s, Vec2{c / x2, x2});
        };
        GrownCurve g = grow_curve(m, seed, opts, sinks);
        result[k] = project_grown_curve(m, q, g, -1);
    }
    return {result[0], result[1]};
}

}  // namespace mss
