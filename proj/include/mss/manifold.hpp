#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mss/canonical.hpp"
#include "mss/periodic.hpp"
#include "mss/surface.hpp"

namespace mss {

enum class Stability { Stable, Unstable };

struct GrowthOptions {
    double arclength_budget = 4.0;
    double max_step = 0.01;
    double max_angle_deg = 10.0;
    double eps = 1e-5;
    int max_generations = 400;
    // Turning angles are only enforced on segments longer than this.
    double angle_min_length = 1e-4;
    // Largest allowed distance between a chord midpoint and the curve.
    double chord_tol = 5e-8;
    int max_vertices = 400000;
};

// An invariant curve of G = f^power parametrized by T >= 0:
//   point(T) = G^floor(T)(seed(T - floor(T))),  with seed(1) = G(seed(0)).
struct CurveSeed {
    std::function<SurfacePoint(double)> at;
    int power = 1;
};

struct GrownCurve {
    std::vector<SurfacePoint> polyline;
    std::vector<double> params;
    double arclength = 0.0;
    bool truncated = false;
    bool escaped = false;
    int terminal_orbit = -1;
};

SurfacePoint curve_point(const MapSpec& m, const CurveSeed& seed, double t);

// Fundamental-domain continuation of an invariant curve. Growth stops at the
// arclength budget, on chart escape, or once a whole new fundamental segment
// lies inside the boxes of a single terminal orbit.
GrownCurve grow_curve(const MapSpec& m, const CurveSeed& seed, const GrowthOptions& opts,
                      const std::vector<LinearizingChart>& terminal_boxes);

struct Separatrix {
    int id = -1;
    int owner = -1;
    int point_index = 0;
    Stability stability = Stability::Unstable;
    int side = 1;
    int period = 1;  // m_gamma
    SurfacePoint base;
    Vec2 direction;     // unit eigenvector times side
    double eps = 1e-5;
    double multiplier = 2.0;  // |eigenvalue of G| along the branch
    double arclength_budget = 0.0;
    GrownCurve curve;
    double invariance_residual = 0.0;

    Branch branch() const;
    // Power of f generating the curve: +m_gamma (unstable) or -m_gamma (stable).
    int power() const { return stability == Stability::Unstable ? period : -period; }
    CurveSeed seed() const;
    const std::vector<SurfacePoint>& polyline() const { return curve.polyline; }
    const std::vector<double>& params() const { return curve.params; }
    std::string label() const;
};

Separatrix grow_separatrix(const MapSpec& m, const PeriodicOrbit& o, Branch branch, const GrowthOptions& opts,
                           const std::vector<LinearizingChart>& terminal_boxes = {}, int point_index = 0);

inline Separatrix grow_separatrix(const MapSpec& m, const PeriodicOrbit& o, Stability st, int side,
                                  double arclength_budget) {
    GrowthOptions g;
    g.arclength_budget = arclength_budget;
    Branch b = st == Stability::Unstable ? (side > 0 ? Branch::UnstablePlus : Branch::UnstableMinus)
                                         : (side > 0 ? Branch::StablePlus : Branch::StableMinus);
    return grow_separatrix(m, o, b, g);
}

SurfacePoint separatrix_point(const MapSpec& m, const Separatrix& s, double t);

// Unit tangent of the parametrized curve at parameter t (direction of
// increasing t), in the chart of the returned point.
std::pair<SurfacePoint, Vec2> curve_tangent(const MapSpec& m, const CurveSeed& seed, double t, double h);

// Distance from p to a polyline (segments measured in the chart of their first
// vertex).
double distance_to_polyline(const SurfaceModel& s, const SurfacePoint& p, const std::vector<SurfacePoint>& poly,
                            size_t first = 0, size_t last = static_cast<size_t>(-1));

// Max over vertices and chord midpoints x (all but the last fundamental
// segment) of the distance from f^power(x) to the polyline.
double invariance_residual(const MapSpec& m, const Separatrix& s);
double curve_invariance_residual(const MapSpec& m, const GrownCurve& c, int power);

}  // namespace mss
