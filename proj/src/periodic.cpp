#include "mss/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "mss/error.hpp"

namespace mss {

const char* orbit_kind_name(OrbitKind kind) {
    switch (kind) {
        case OrbitKind::Sink: return "sink";
        case OrbitKind::Saddle: return "saddle";
        case OrbitKind::Source: return "source";
    }
    return "sink";
}

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::UnstablePlus: return "u+";
        case Branch::UnstableMinus: return "u-";
        case Branch::StablePlus: return "s+";
        case Branch::StableMinus: return "s-";
    }
    return "u+";
}

Mat2 return_jacobian(const MapSpec& m, const SurfacePoint& x, int n) {
    auto [img, j] = apply_map_with_jacobian(m, x, n);
    if (img.chart != x.chart) j = m.surface.transition_jacobian(img.chart, x.chart, img.coords) * j;
    return j;
}

namespace {

// Compares on a 1e-9 grid so that round-off does not reorder orbits.
bool point_less(const SurfacePoint& a, const SurfacePoint& b) {
    auto key = [](const SurfacePoint& p) {
        return std::tuple{p.chart, std::llround(p.coords.x * 1e9), std::llround(p.coords.y * 1e9)};
    };
    return key(a) < key(b);
}

// Torus coordinates within round-off of an integer are snapped to 0.
SurfacePoint tidy(const MapSpec& m, SurfacePoint p) {
    if (m.surface.kind() != SurfaceKind::Torus) return p;
    for (double* c : {&p.coords.x, &p.coords.y})
        if (std::abs(*c - std::round(*c)) < 1e-11) *c = 0.0;
    return p;
}

Vec2 canonical_sign(Vec2 v) {
    if (v.x < -1e-12 || (std::abs(v.x) <= 1e-12 && v.y < 0)) return -v;
    return v;
}

struct NewtonResult {
    bool ok = false;
    SurfacePoint point;
};

NewtonResult newton_periodic(const MapSpec& m, SurfacePoint x, int period, const PeriodicSearchOptions& o) {
    const SurfaceModel& s = m.surface;
    NewtonResult res;
    try {
        Vec2 r = s.displacement(x, apply_map(m, x, period));
        double rn = norm(r);
        for (int it = 0; it < o.newton_max_iterations && rn > o.newton_tolerance; ++it) {
            Mat2 j = return_jacobian(m, x, period) - Mat2::identity();
            if (std::abs(j.det()) < 1e-14) return res;
            Vec2 step = j.inverse() * r;
            if (norm(step) > 0.5) step = step * (0.5 / norm(step));
            double t = 1.0;
            bool improved = false;
            for (int k = 0; k < 30; ++k) {
                SurfacePoint cand = s.normalize({x.chart, x.coords - step * t});
                Vec2 rc = s.displacement(cand, apply_map(m, cand, period));
                double rcn = norm(rc);
                if (rcn < rn) {
                    x = cand;
                    r = rc;
                    rn = rcn;
                    improved = true;
                    break;
                }
                t *= 0.5;
            }
            if (!improved) break;
        }
        if (rn <= o.newton_tolerance || rn < 1e-10) {
            res.ok = true;
            res.point = x;
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ChartEscape) throw;
    }
    return res;
}

int minimal_period(const MapSpec& m, const SurfacePoint& x, int period) {
    for (int d = 1; d < period; ++d) {
        if (period % d != 0) continue;
        if (m.surface.distance(x, apply_map(m, x, d)) < 1e-8) return d;
    }
    return period;
}

bool in_search_region(const MapSpec& m, const std::vector<Box>& boxes, const SurfacePoint& p) {
    if (m.surface.kind() != SurfaceKind::Plane) return true;
    const Box& b = boxes[0];
    Box grown{b.lo - Vec2{1e-9, 1e-9}, b.hi + Vec2{1e-9, 1e-9}};
    return grown.contains(p.coords);
}

}  // namespace

PeriodicOrbit classify_orbit(const MapSpec& m, const SurfacePoint& p, int period, double margin) {
    PeriodicOrbit o;
    o.period = period;
    o.points.push_back(tidy(m, p));
    for (int i = 1; i < period; ++i) o.points.push_back(tidy(m, apply_map(m, o.points.back(), 1)));
    // Rotate so the lexicographically smallest point leads.
    auto it = std::min_element(o.points.begin(), o.points.end(), point_less);
    std::rotate(o.points.begin(), it, o.points.end());

    for (const auto& q : o.points) o.jacobians.push_back(return_jacobian(m, q, period));
    EigenData e0 = eigen2(o.jacobians[0]);
    o.eigenvalues = e0.values;
    o.real_eigenvalues = e0.real;
    double a0 = std::abs(e0.values[0]);
    double a1 = std::abs(e0.values[1]);
    for (double a : {a0, a1}) {
        if (a > 1.0 - margin && a < 1.0 + margin)
            throw Error(ErrorKind::NonHyperbolicOrbit, "eigenvalue modulus " + std::to_string(a) + " too close to 1");
    }
    if (a1 < 1.0) o.kind = OrbitKind::Sink;
    else if (a0 > 1.0) o.kind = OrbitKind::Source;
    else o.kind = OrbitKind::Saddle;

    for (const Mat2& j : o.jacobians) {
        EigenData e = eigen2(j);
        std::array<Vec2, 2> v = e.vectors;
        if (o.kind == OrbitKind::Saddle) {
            v[0] = canonical_sign(v[0]);
            if (cross(v[0], v[1]) < 0) v[1] = -v[1];
        }
        o.eigenvectors.push_back(v);
    }
    if (o.kind == OrbitKind::Saddle) {
        if ((o.lambda_s() > 0) != (o.lambda_u() > 0))
            throw Error(ErrorKind::NonOrientationPreserving, "saddle eigenvalues of opposite sign");
        o.orientation = o.lambda_u() > 0 ? 1 : -1;
    }
    return o;
}

std::vector<PeriodicOrbit> find_periodic_points(const MapSpec& m, const PeriodicSearchOptions& o) {
    if (o.max_period < 1) throw Error(ErrorKind::InvalidArgument, "max_period must be >= 1");
    if (o.grid_density < 8) throw Error(ErrorKind::InvalidArgument, "grid_density must be >= 8");
    const SurfaceModel& s = m.surface;
    std::vector<Box> boxes = m.search_boxes();
    std::vector<PeriodicOrbit> orbits;

    auto known = [&](const SurfacePoint& p) {
        for (const auto& orb : orbits)
            for (const auto& q : orb.points)
                if (s.distance(p, q) < o.dedup_radius) return true;
        return false;
    };

    for (int period = 1; period <= o.max_period; ++period) {
        for (int chart = 0; chart < s.chart_count(); ++chart) {
            const Box& b = boxes[static_cast<size_t>(chart)];
            for (int i = 0; i < o.grid_density; ++i) {
                for (int j = 0; j < o.grid_density; ++j) {
                    Vec2 c{b.lo.x + (i + 0.5) / o.grid_density * (b.hi.x - b.lo.x),
                           b.lo.y + (j + 0.5) / o.grid_density * (b.hi.y - b.lo.y)};
                    if (!s.in_domain(chart, c)) continue;
                    SurfacePoint seed = s.normalize({chart, c});
                    NewtonResult r = newton_periodic(m, seed, period, o);
                    if (!r.ok) continue;
                    if (!in_search_region(m, boxes, r.point)) continue;
                    if (known(r.point)) continue;
                    int p = minimal_period(m, r.point, period);
                    orbits.push_back(classify_orbit(m, r.point, p, o.hyperbolicity_margin));
                }
            }
        }
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const PeriodicOrbit& a, const PeriodicOrbit& b) { return point_less(a.points[0], b.points[0]); });
    for (size_t i = 0; i < orbits.size(); ++i) orbits[i].id = static_cast<int>(i);
    return orbits;
}

int orientation_type(const PeriodicOrbit& o) {
    if (o.kind != OrbitKind::Saddle) throw Error(ErrorKind::NotASaddle, "orbit is a " + std::string(orbit_kind_name(o.kind)));
    return o.lambda_u() > 0 ? 1 : -1;
}

int separatrix_period(const PeriodicOrbit& o, Branch branch) {
    if (o.kind != OrbitKind::Saddle) throw Error(ErrorKind::NotASaddle, "orbit is a " + std::string(orbit_kind_name(o.kind)));
    double lam = is_unstable(branch) ? o.lambda_u() : o.lambda_s();
    return lam > 0 ? o.period : 2 * o.period;
}

}  // namespace mss
