#pragma once

#include "mss/periodic.hpp"
#include "mss/surface.hpp"

namespace mss {

struct CanonicalSaddle {
    int nu = 1;
};

// a_nu(x1, x2) = (nu x1 / 2, 2 nu x2)
Vec2 canonical_apply(CanonicalSaddle c, Vec2 x);

// N = {|x1 x2| <= 1}
bool in_model_neighborhood(Vec2 x);

enum class LeafFamily { Unstable, Stable };

// Unstable leaves are x1 = c, stable leaves are x2 = c.
struct Leaf {
    LeafFamily family = LeafFamily::Unstable;
    double constant = 0.0;
    bool operator==(const Leaf&) const = default;
};

Leaf leaf_through(Vec2 x, LeafFamily family);
Leaf canonical_leaf_image(CanonicalSaddle c, const Leaf& leaf);

// a_nu as a plane MapSpec with analytic inverse and Jacobian.
MapSpec canonical_map_spec(int nu);

// Affine eigenframe chart around one point of a saddle, sink or source orbit.
// Model coordinates are (r E)^{-1} (x - base) where the columns of E are the
// orbit's eigenvectors at that point (stable axis first for saddles).
struct LinearizingChart {
    int owner = -1;
    OrbitKind kind = OrbitKind::Saddle;
    int point_index = 0;
    int period = 1;
    SurfacePoint base;
    double r = 1.0;
    Mat2 frame;      // r E
    Mat2 frame_inv;  // (r E)^{-1}
    Mat2 model;      // frame_inv * Df^period * frame
    // Max deviation of f^period from its linear part on the box boundary,
    // measured in surface chart units.
    double residual = 0.0;

    Vec2 to_model(const SurfaceModel& s, const SurfacePoint& x) const;
    SurfacePoint from_model(const SurfaceModel& s, Vec2 y) const;
    bool contains(const SurfaceModel& s, const SurfacePoint& x) const;
};

LinearizingChart build_linearizing_chart(const MapSpec& m, const PeriodicOrbit& o, double r, int point_index = 0);

// Largest r = 2^-k (k >= 0) whose box fits one chart and whose residual is
// below 0.1 r.
LinearizingChart auto_linearizing_chart(const MapSpec& m, const PeriodicOrbit& o, int point_index = 0);

}  // namespace mss
