#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mss/geometry.hpp"

namespace mss {

enum class SurfaceKind { Plane, Torus, Sphere };

const char* surface_name(SurfaceKind kind);

struct SurfacePoint {
    int chart = 0;
    Vec2 coords;
};

struct Box {
    Vec2 lo;
    Vec2 hi;
    bool contains(Vec2 p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }
};

// Chart atlas of one of the three supported surfaces.
//
// plane:  one chart, coordinates bounded by `plane_bound`.
// torus:  one chart, coordinates normalized into [0,1)^2.
// sphere: chart 0 (z) and chart 1 (w = z/|z|^2). The transition reverses
//         orientation, so chart 1 carries the orientation convention -1.
class SurfaceModel {
public:
    static SurfaceModel plane(double bound = 1e6);
    static SurfaceModel torus();
    static SurfaceModel sphere();

    SurfaceKind kind() const { return kind_; }
    int chart_count() const { return kind_ == SurfaceKind::Sphere ? 2 : 1; }
    int orientation(int chart) const { return chart == 1 ? -1 : 1; }

    bool in_domain(int chart, Vec2 c) const;
    // Brings a point into canonical form: torus wrap, sphere chart choice.
    SurfacePoint normalize(SurfacePoint p) const;
    bool valid(const SurfacePoint& p) const;

    std::optional<Vec2> transition(int from, int to, Vec2 c) const;
    Mat2 transition_jacobian(int from, int to, Vec2 c) const;
    std::optional<Vec2> express(const SurfacePoint& p, int chart) const;

    // Vector from a to b in a's chart (shortest representative on the torus).
    Vec2 displacement(const SurfacePoint& a, const SurfacePoint& b) const;
    double distance(const SurfacePoint& a, const SurfacePoint& b) const;

    // Sign of det[u v] corrected by the chart orientation; 0 when |det| < 1e-12.
    int frame_sign(const SurfacePoint& x, Vec2 u, Vec2 v) const;

    // Default per-chart region searched for periodic points.
    std::vector<Box> default_seed_boxes() const;

    double plane_bound() const { return plane_bound_; }

    static constexpr double kSphereSwitch = 2.0;
    static constexpr double kSphereDomain = 4.0;

private:
    SurfaceKind kind_ = SurfaceKind::Plane;
    double plane_bound_ = 1e6;
};

using ChartFn = std::function<Vec2(Vec2)>;
using ChartJac = std::function<Mat2(Vec2)>;

// The diffeomorphism under study, given chart by chart. Each forward map
// returns coordinates in the chart it was evaluated in; on the torus it is a
// lift (values outside [0,1) are wrapped by apply_map).
struct MapSpec {
    std::string name;
    SurfaceModel surface = SurfaceModel::plane();
    std::vector<ChartFn> forward;
    std::vector<ChartFn> inverse;
    std::vector<ChartJac> jacobian;
    std::vector<Box> seed_boxes;
    std::vector<std::pair<std::string, double>> parameters;

    bool has_inverse() const { return !inverse.empty(); }
    bool has_jacobian() const { return !jacobian.empty(); }
    std::vector<Box> search_boxes() const {
        return seed_boxes.empty() ? surface.default_seed_boxes() : seed_boxes;
    }
};

constexpr double kFiniteDifferenceStep = 1e-6;

Mat2 finite_difference_jacobian(const ChartFn& f, Vec2 x, double h = kFiniteDifferenceStep);

// Inverse of a chart map by damped Newton to tolerance 1e-12. On the torus the
// residual is taken modulo the integer lattice.
ChartFn newton_inverse(ChartFn f, ChartJac jac, bool periodic);

SurfacePoint apply_map(const MapSpec& m, const SurfacePoint& x, int n);

// Jacobian of the chart-local formula at x (same chart on both sides).
Mat2 apply_jacobian(const MapSpec& m, const SurfacePoint& x);

// f^n(x) for n >= 0 together with D(f^n)(x), mapping tangent vectors in x's
// chart to tangent vectors in the chart of the returned point.
std::pair<SurfacePoint, Mat2> apply_map_with_jacobian(const MapSpec& m, const SurfacePoint& x, int n);

int frame_sign(const SurfaceModel& s, const SurfacePoint& x, Vec2 u, Vec2 v);

}  // namespace mss
