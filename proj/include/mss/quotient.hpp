#pragma once

#include <utility>
#include <vector>

#include "mss/canonical.hpp"
#include "mss/manifold.hpp"
#include "mss/periodic.hpp"

namespace mss {

// Orbit space of the punctured basin of a sink, realized on the fundamental
// annulus D \ f^m(D), D = {rho <= r} around the sink's first orbit point,
// with rho the norm in the sink's eigenframe coordinates.
struct QuotientChart {
    int sink = -1;
    int period = 1;      // m_omega
    int components = 1;  // m_V
    SurfacePoint center;
    Mat2 frame;  // unit eigenframe (real Jordan basis for complex eigenvalues)
    Mat2 frame_inv;
    double r = 0.5;
    int max_steps = 2000;

    Vec2 local(const SurfaceModel& s, const SurfacePoint& x) const { return frame_inv * s.displacement(center, x); }
    double rho(const SurfaceModel& s, const SurfacePoint& x) const { return norm(local(s, x)); }
};

QuotientChart build_sink_quotient(const MapSpec& m, const PeriodicOrbit& sink, double r);

struct AnnulusPoint {
    double s = 0.0;      // radial step in [0,1)
    double theta = 0.0;  // angle in [0,1)
    int level = 0;       // n with f^n(x) in the annulus
    SurfacePoint representative;
};

AnnulusPoint project_point(const MapSpec& m, const QuotientChart& q, const SurfacePoint& x);

struct ProjectedCurve {
    int source = -1;  // separatrix id (or -1 for auxiliary curves)
    std::vector<std::vector<Vec2>> arcs;  // (s, theta) samples
    std::vector<double> gluing_thetas;    // where the curve crosses the gluing circle
    bool closed = false;
    double closure_gap = 0.0;
    int winding = 0;
};

// Projects the last complete fundamental segment [x, G(x)] of the curve.
ProjectedCurve project_grown_curve(const MapSpec& m, const QuotientChart& q, const GrownCurve& c, int source);
ProjectedCurve project_curve(const MapSpec& m, const QuotientChart& q, const Separatrix& s);

// Invariant curves through the corners (+-1, 1) of the saddle's model box on
// the side of the branch: the boundary of the component of N minus W^s that
// contains the separatrix. Both are grown forward and projected.
std::pair<ProjectedCurve, ProjectedCurve> project_neighborhood_boundary(const MapSpec& m, const QuotientChart& q,
                                                                        const PeriodicOrbit& saddle, Branch branch,
                                                                        const LinearizingChart& chart,
                                                                        const GrowthOptions& opts,
                                                                        const std::vector<LinearizingChart>& sinks);

}  // namespace mss
