#pragma once

#include <complex>
#include <vector>

#include "mss/surface.hpp"

namespace mss {

enum class OrbitKind { Sink, Saddle, Source };

const char* orbit_kind_name(OrbitKind kind);

enum class Branch { UnstablePlus, UnstableMinus, StablePlus, StableMinus };

const char* branch_name(Branch b);
inline bool is_unstable(Branch b) { return b == Branch::UnstablePlus || b == Branch::UnstableMinus; }
inline int branch_side(Branch b) { return (b == Branch::UnstablePlus || b == Branch::StablePlus) ? 1 : -1; }

struct PeriodicOrbit {
    int id = -1;
    std::vector<SurfacePoint> points;
    int period = 1;
    OrbitKind kind = OrbitKind::Sink;
    // Eigenvalues of Df^period, sorted by modulus (smallest first). For
    // saddles values[0] = lambda_s and values[1] = lambda_u, both real.
    std::array<std::complex<double>, 2> eigenvalues;
    bool real_eigenvalues = true;
    // Per orbit point: Df^period at that point, in that point's chart.
    std::vector<Mat2> jacobians;
    // Per orbit point: unit eigenvectors (first = weaker/stable direction).
    // Saddles: stable vector has positive first component (or positive second
    // when the first vanishes) and det[v_s, v_u] > 0. Complex sinks/sources
    // carry a real Jordan basis.
    std::vector<std::array<Vec2, 2>> eigenvectors;
    // +1/-1 for saddles (sign of lambda_u), 0 otherwise.
    int orientation = 0;

    double lambda_s() const { return eigenvalues[0].real(); }
    double lambda_u() const { return eigenvalues[1].real(); }
};

struct PeriodicSearchOptions {
    int max_period = 1;
    int grid_density = 32;
    double newton_tolerance = 1e-12;
    int newton_max_iterations = 50;
    double dedup_radius = 1e-6;
    double hyperbolicity_margin = 1e-6;
};

std::vector<PeriodicOrbit> find_periodic_points(const MapSpec& m, const PeriodicSearchOptions& opts);

inline std::vector<PeriodicOrbit> find_periodic_points(const MapSpec& m, int max_period, int grid_density) {
    PeriodicSearchOptions o;
    o.max_period = max_period;
    o.grid_density = grid_density;
    return find_periodic_points(m, o);
}

// Builds the full orbit record (period, eigendata, classification) for a
// point already known to be periodic with the given minimal period.
PeriodicOrbit classify_orbit(const MapSpec& m, const SurfacePoint& p, int period, double margin = 1e-6);

int orientation_type(const PeriodicOrbit& o);
int separatrix_period(const PeriodicOrbit& o, Branch branch);

// D(f^n) at x expressed in x's chart on both sides (requires f^n(x) to be
// expressible in that chart, which holds for periodic points).
Mat2 return_jacobian(const MapSpec& m, const SurfacePoint& x, int n);

}  // namespace mss
