#include "mss/surface.hpp"

#include <cmath>

#include "mss/error.hpp"

namespace mss {

const char* surface_name(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::Plane: return "plane";
        case SurfaceKind::Torus: return "torus";
        case SurfaceKind::Sphere: return "sphere";
    }
    return "plane";
}

namespace {

double wrap_unit(double v) {
    double w = v - std::floor(v);
    if (w >= 1.0) w = 0.0;  // -1e-17 wraps to 1.0 in floating point
    return w;
}

double wrap_half(double d) { return d - std::floor(d + 0.5); }

Vec2 invert_circle(Vec2 c) {
    double r2 = dot(c, c);
    return c / r2;
}

}  // namespace

SurfaceModel SurfaceModel::plane(double bound) {
    SurfaceModel s;
    s.kind_ = SurfaceKind::Plane;
    s.plane_bound_ = bound;
    return s;
}

SurfaceModel SurfaceModel::torus() {
    SurfaceModel s;
    s.kind_ = SurfaceKind::Torus;
    return s;
}

SurfaceModel SurfaceModel::sphere() {
    SurfaceModel s;
    s.kind_ = SurfaceKind::Sphere;
    return s;
}

bool SurfaceModel::in_domain(int chart, Vec2 c) const {
    if (chart < 0 || chart >= chart_count()) return false;
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) return false;
    switch (kind_) {
        case SurfaceKind::Plane: return norm_inf(c) <= plane_bound_;
        case SurfaceKind::Torus: return c.x >= 0 && c.x < 1 && c.y >= 0 && c.y < 1;
        case SurfaceKind::Sphere: return norm(c) < kSphereDomain;
    }
    return false;
}

bool SurfaceModel::valid(const SurfacePoint& p) const { return in_domain(p.chart, p.coords); }

SurfacePoint SurfaceModel::normalize(SurfacePoint p) const {
    if (!std::isfinite(p.coords.x) || !std::isfinite(p.coords.y))
        throw Error(ErrorKind::ChartEscape, "non-finite coordinates");
    switch (kind_) {
        case SurfaceKind::Plane:
            if (norm_inf(p.coords) > plane_bound_)
                throw Error(ErrorKind::ChartEscape, "point left the plane chart");
            return p;
        case SurfaceKind::Torus:
            return {0, {wrap_unit(p.coords.x), wrap_unit(p.coords.y)}};
        case SurfaceKind::Sphere: {
            double r = norm(p.coords);
            if (r > kSphereSwitch) return {1 - p.chart, invert_circle(p.coords)};
            return p;
        }
    }
    return p;
}

std::optional<Vec2> SurfaceModel::transition(int from, int to, Vec2 c) const {
    if (from == to) return c;
    if (kind_ != SurfaceKind::Sphere) return std::nullopt;
    double r = norm(c);
    if (r < 1.0 / kSphereDomain) return std::nullopt;
    return invert_circle(c);
}

Mat2 SurfaceModel::transition_jacobian(int from, int to, Vec2 c) const {
    if (from == to || kind_ != SurfaceKind::Sphere) return Mat2::identity();
    double r2 = dot(c, c);
    double r4 = r2 * r2;
    // d(c/|c|^2) = (|c|^2 I - 2 c c^T) / |c|^4
    return {(r2 - 2 * c.x * c.x) / r4, -2 * c.x * c.y / r4, -2 * c.x * c.y / r4,
            (r2 - 2 * c.y * c.y) / r4};
}

std::optional<Vec2> SurfaceModel::express(const SurfacePoint& p, int chart) const {
    return transition(p.chart, chart, p.coords);
}

Vec2 SurfaceModel::displacement(const SurfacePoint& a, const SurfacePoint& b) const {
    if (kind_ == SurfaceKind::Torus) {
        Vec2 d = b.coords - a.coords;
        return {wrap_half(d.x), wrap_half(d.y)};
    }
    if (a.chart == b.chart) return b.coords - a.coords;
    auto bc = express(b, a.chart);
    if (bc) return *bc - a.coords;
    auto ac = express(a, b.chart);
    if (ac) return b.coords - *ac;
    return {1e300, 1e300};
}

double SurfaceModel::distance(const SurfacePoint& a, const SurfacePoint& b) const {
    return norm(displacement(a, b));
}

int SurfaceModel::frame_sign(const SurfacePoint& x, Vec2 u, Vec2 v) const {
    double d = cross(u, v);
    if (std::abs(d) < 1e-12) return 0;
    int s = d > 0 ? 1 : -1;
    return s * orientation(x.chart);
}

std::vector<Box> SurfaceModel::default_seed_boxes() const {
    switch (kind_) {
        case SurfaceKind::Plane: return {Box{{-2, -2}, {2, 2}}};
        case SurfaceKind::Torus: return {Box{{0, 0}, {1, 1}}};
        case SurfaceKind::Sphere:
            return {Box{{-kSphereSwitch, -kSphereSwitch}, {kSphereSwitch, kSphereSwitch}},
                    Box{{-1.0 / kSphereSwitch, -1.0 / kSphereSwitch}, {1.0 / kSphereSwitch, 1.0 / kSphereSwitch}}};
    }
    return {};
}

int frame_sign(const SurfaceModel& s, const SurfacePoint& x, Vec2 u, Vec2 v) {
    return s.frame_sign(x, u, v);
}

Mat2 finite_difference_jacobian(const ChartFn& f, Vec2 x, double h) {
    Vec2 fx1 = f({x.x + h, x.y});
    Vec2 fx0 = f({x.x - h, x.y});
    Vec2 fy1 = f({x.x, x.y + h});
    Vec2 fy0 = f({x.x, x.y - h});
    Vec2 dx = (fx1 - fx0) / (2 * h);
    Vec2 dy = (fy1 - fy0) / (2 * h);
    return Mat2::columns(dx, dy);
}

ChartFn newton_inverse(ChartFn f, ChartJac jac, bool periodic) {
    return [f = std::move(f), jac = std::move(jac), periodic](Vec2 target) {
        auto residual = [&](Vec2 y) {
            Vec2 r = f(y) - target;
            if (periodic) r = {wrap_half(r.x), wrap_half(r.y)};
            return r;
        };
        Vec2 guess = target - residual(target);
        Vec2 best = target;
        double best_norm = 1e300;
        for (Vec2 start : {guess, target}) {
            Vec2 y = start;
            Vec2 r = residual(y);
            double rn = norm(r);
            for (int it = 0; it < 60 && rn > 1e-14; ++it) {
                Mat2 j = jac ? jac(y) : finite_difference_jacobian(f, y);
                if (std::abs(j.det()) < 1e-300) break;
                Vec2 step = j.inverse() * r;
                double t = 1.0;
                bool improved = false;
                for (int k = 0; k < 30; ++k) {
                    Vec2 cand = y - step * t;
                    Vec2 rc = residual(cand);
                    double rcn = norm(rc);
                    if (rcn < rn) {
                        y = cand;
                        r = rc;
                        rn = rcn;
                        improved = true;
                        break;
                    }
                    t *= 0.5;
                }
                if (!improved) break;
            }
            if (rn < best_norm) {
                best_norm = rn;
                best = y;
            }
            if (best_norm <= 1e-12) break;
        }
        return best;
    };
}

namespace {

struct StepResult {
    SurfacePoint point;
    int eval_chart;
    Vec2 eval_coords;
};

StepResult step(const MapSpec& m, const SurfacePoint& x, bool backward) {
    const auto& fns = backward ? m.inverse : m.forward;
    const SurfaceModel& s = m.surface;
    int chart = x.chart;
    Vec2 c = x.coords;
    Vec2 img = fns[chart](c);
    if (s.kind() == SurfaceKind::Sphere && !s.in_domain(chart, img)) {
        int other = 1 - chart;
        auto oc = s.transition(chart, other, c);
        if (oc) {
            Vec2 alt = fns[other](*oc);
            if (s.in_domain(other, alt)) {
                chart = other;
                c = *oc;
                img = alt;
            }
        }
    }
    if (s.kind() == SurfaceKind::Sphere && !s.in_domain(chart, img))
        throw Error(ErrorKind::ChartEscape, "image left both sphere charts");
    return {s.normalize({chart, img}), chart, c};
}

}  // namespace

SurfacePoint apply_map(const MapSpec& m, const SurfacePoint& x, int n) {
    if (n == 0) return x;
    if (n < 0 && !m.has_inverse()) throw Error(ErrorKind::NoInverse, "map '" + m.name + "' has no inverse");
    SurfacePoint p = x;
    int count = n < 0 ? -n : n;
    for (int i = 0; i < count; ++i) p = step(m, p, n < 0).point;
    return p;
}

Mat2 apply_jacobian(const MapSpec& m, const SurfacePoint& x) {
    Mat2 j = m.has_jacobian() ? m.jacobian[x.chart](x.coords)
                              : finite_difference_jacobian(m.forward[x.chart], x.coords);
    if (!(j.det() > 0))
        throw Error(ErrorKind::NonOrientationPreserving, "Jacobian determinant is not positive for map '" + m.name + "'");
    return j;
}

std::pair<SurfacePoint, Mat2> apply_map_with_jacobian(const MapSpec& m, const SurfacePoint& x, int n) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "apply_map_with_jacobian needs n >= 0");
    const SurfaceModel& s = m.surface;
    SurfacePoint p = x;
    Mat2 total = Mat2::identity();
    for (int i = 0; i < n; ++i) {
        StepResult r = step(m, p, false);
        Mat2 into = s.transition_jacobian(p.chart, r.eval_chart, p.coords);
        Mat2 local = apply_jacobian(m, {r.eval_chart, r.eval_coords});
        Vec2 raw = m.forward[r.eval_chart](r.eval_coords);
        Mat2 out = s.transition_jacobian(r.eval_chart, r.point.chart, raw);
        total = out * local * into * total;
        p = r.point;
    }
    return {p, total};
}

}  // namespace mss
