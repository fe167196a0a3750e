#pragma once

#include <vector>

#include "mss/manifold.hpp"

namespace mss {

// Proper crossing of segments [p0,p1] and [q0,q1]: parameters in [0,1) on
// both (half-open, so a crossing through a shared vertex counts once).
bool segment_intersection(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1, double& tu, double& ts);

struct Segment {
    Vec2 a;
    Vec2 b;
    int chart = 0;
    size_t index = 0;  // index of the first vertex in the polyline
};

// Polyline segments in coordinates suitable for comparison: torus segments
// are unwrapped from their first vertex, sphere segments are emitted in every
// chart that holds both endpoints comfortably.
std::vector<Segment> polyline_segments(const SurfaceModel& s, const std::vector<SurfacePoint>& poly);

// Translates applied to the second polyline (the 9 nearest lattice
// translates on the torus, the zero vector otherwise).
std::vector<Vec2> comparison_translates(const SurfaceModel& s);

struct Crossing {
    size_t seg_u = 0;
    size_t seg_s = 0;
    double tu = 0.0;
    double ts = 0.0;
    int chart = 0;
    Vec2 point;  // in unwrapped coordinates of the unstable segment
    bool operator<(const Crossing& o) const;
};

// Sweep over x-sorted segment bounding boxes.
std::vector<Crossing> find_crossings(const SurfaceModel& s, const std::vector<SurfacePoint>& unstable,
                                     const std::vector<SurfacePoint>& stable);

struct HeteroclinicPoint {
    SurfacePoint location;          // crossing of the two polylines
    SurfacePoint refined_location;  // crossing of the true manifolds
    int from_saddle = -1;           // owner of W^u
    int to_saddle = -1;             // owner of W^s
    int unstable_separatrix = -1;
    int stable_separatrix = -1;
    size_t seg_u = 0;
    size_t seg_s = 0;
    double param_u = 0.0;
    double param_s = 0.0;
    double refine_residual = 0.0;
    bool refined = false;
    Vec2 v_u;
    Vec2 v_s;
    int sign = 0;
    int orbit_id = -1;
};

std::vector<HeteroclinicPoint> detect_intersections(const MapSpec& m, const Separatrix& su, const Separatrix& ss);

int default_k_max(int max_separatrix_period, double arclength_budget);

// Annotates every point with an orbit id (equal ids iff related by f^k,
// |k| <= k_max, within 1e-8) and returns one representative per class: the
// one nearest to its stable saddle along the stable curve.
std::vector<HeteroclinicPoint> dedup_by_orbit(std::vector<HeteroclinicPoint>& pts, const MapSpec& m, int k_max);

enum class Orientability { Orientable, NonOrientable, Vacuous };

const char* orientability_name(Orientability o);

Orientability classify_orientability(const std::vector<HeteroclinicPoint>& pts);

}  // namespace mss
