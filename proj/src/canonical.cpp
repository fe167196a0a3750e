#include "mss/canonical.hpp"

#include <cmath>

#include "mss/error.hpp"

namespace mss {

Vec2 canonical_apply(CanonicalSaddle c, Vec2 x) {
    double nu = c.nu >= 0 ? 1.0 : -1.0;
    return {nu * x.x / 2.0, nu * 2.0 * x.y};
}

bool in_model_neighborhood(Vec2 x) { return std::abs(x.x * x.y) <= 1.0; }

Leaf leaf_through(Vec2 x, LeafFamily family) {
    if (!in_model_neighborhood(x)) throw Error(ErrorKind::OutsideN, "point is outside the model neighborhood");
    return {family, family == LeafFamily::Unstable ? x.x : x.y};
}

Leaf canonical_leaf_image(CanonicalSaddle c, const Leaf& leaf) {
    double nu = c.nu >= 0 ? 1.0 : -1.0;
    if (leaf.family == LeafFamily::Unstable) return {leaf.family, nu * leaf.constant / 2.0};
    return {leaf.family, nu * 2.0 * leaf.constant};
}

MapSpec canonical_map_spec(int nu) {
    MapSpec m;
    m.name = nu >= 0 ? "canonical-plus" : "canonical-minus";
    m.surface = SurfaceModel::plane();
    CanonicalSaddle c{nu >= 0 ? 1 : -1};
    double s = c.nu;
    m.forward = {[c](Vec2 x) { return canonical_apply(c, x); }};
    m.inverse = {[s](Vec2 x) { return Vec2{s * 2.0 * x.x, s * x.y / 2.0}; }};
    m.jacobian = {[s](Vec2) { return Mat2::diag(s * 0.5, s * 2.0); }};
    m.parameters = {{"nu", s}};
    return m;
}

Vec2 LinearizingChart::to_model(const SurfaceModel& s, const SurfacePoint& x) const {
    return frame_inv * s.displacement(base, x);
}

SurfacePoint LinearizingChart::from_model(const SurfaceModel& s, Vec2 y) const {
    return s.normalize({base.chart, base.coords + frame * y});
}

bool LinearizingChart::contains(const SurfaceModel& s, const SurfacePoint& x) const {
    return norm_inf(to_model(s, x)) <= 1.0;
}

namespace {

bool box_fits(const SurfaceModel& s, const LinearizingChart& ch) {
    for (double sx : {-1.0, 1.0}) {
        for (double sy : {-1.0, 1.0}) {
            Vec2 off = ch.frame * Vec2{sx, sy};
            Vec2 c = ch.base.coords + off;
            switch (s.kind()) {
                case SurfaceKind::Plane:
                    if (norm_inf(c) > s.plane_bound()) return false;
                    break;
                case SurfaceKind::Torus:
                    if (norm_inf(off) >= 0.25) return false;
                    break;
                case SurfaceKind::Sphere:
                    if (norm(c) >= SurfaceModel::kSphereDomain) return false;
                    break;
            }
        }
    }
    return true;
}

double nonlinear_residual(const MapSpec& m, const LinearizingChart& ch) {
    const SurfaceModel& s = m.surface;
    const int per_edge = 32;
    double worst = 0.0;
    for (int e = 0; e < 4; ++e) {
        for (int k = 0; k < per_edge; ++k) {
            double t = -1.0 + 2.0 * k / per_edge;
            Vec2 y;
            switch (e) {
                case 0: y = {t, -1.0}; break;
                case 1: y = {1.0, t}; break;
                case 2: y = {-t, 1.0}; break;
                default: y = {-1.0, -t}; break;
            }
            SurfacePoint x = ch.from_model(s, y);
            SurfacePoint fx = apply_map(m, x, ch.period);
            Vec2 actual = s.displacement(ch.base, fx);
            Vec2 linear = ch.frame * (ch.model * y);
            worst = std::max(worst, norm_inf(actual - linear));
        }
    }
    return worst;
}

}  // namespace

LinearizingChart build_linearizing_chart(const MapSpec& m, const PeriodicOrbit& o, double r, int point_index) {
    if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "chart size must be positive");
    if (point_index < 0 || point_index >= static_cast<int>(o.points.size()))
        throw Error(ErrorKind::InvalidArgument, "orbit point index out of range");
    const auto& v = o.eigenvectors[static_cast<size_t>(point_index)];
    if (std::abs(cross(normalized(v[0]), normalized(v[1]))) < 1e-8)
        throw Error(ErrorKind::DegenerateEigenframe, "eigenvectors are nearly collinear");
    LinearizingChart ch;
    ch.owner = o.id;
    ch.kind = o.kind;
    ch.point_index = point_index;
    ch.period = o.period;
    ch.base = o.points[static_cast<size_t>(point_index)];
    ch.r = r;
    Mat2 e = Mat2::columns(v[0], v[1]);
    ch.frame = Mat2{e.a * r, e.b * r, e.c * r, e.d * r};
    ch.frame_inv = ch.frame.inverse();
    ch.model = ch.frame_inv * o.jacobians[static_cast<size_t>(point_index)] * ch.frame;
    if (!box_fits(m.surface, ch)) throw Error(ErrorKind::ChartTooLarge, "model box leaves the surface chart");
    ch.residual = nonlinear_residual(m, ch);
    return ch;
}

LinearizingChart auto_linearizing_chart(const MapSpec& m, const PeriodicOrbit& o, int point_index) {
    double r = 1.0;
    for (int k = 0; k <= 30; ++k, r *= 0.5) {
        try {
            LinearizingChart ch = build_linearizing_chart(m, o, r, point_index);
            if (ch.residual < 0.1 * r) return ch;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ChartTooLarge && e.kind() != ErrorKind::ChartEscape) throw;
        }
    }
    throw Error(ErrorKind::ChartTooLarge, "no chart size satisfies the residual bound");
}

}  // namespace mss
