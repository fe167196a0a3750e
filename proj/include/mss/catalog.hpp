#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mss/surface.hpp"

namespace mss {

struct AnalysisOptions {
    int max_period = 1;
    int grid_density = 32;
    double arclength_budget = 4.0;
    double max_step = 0.01;
    double max_angle_deg = 10.0;
    bool boundary_curves = true;
};

struct ExpectedOutcome {
    std::string orientability;  // "orientable", "non-orientable", "vacuous"
    int beh = 0;
    int sinks = 0;
    int saddles = 0;
    int sources = 0;
    // Expected winding of every projected separatrix circle, -1 if none.
    int winding = -1;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    std::function<MapSpec()> build;
    AnalysisOptions defaults;
    ExpectedOutcome expected;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& find_catalog_entry(const std::string& name);

// Building blocks of the catalog maps, exposed for tests.
namespace blocks {
double circle_gradient(double x, double c);        // x + c/(2pi) sin(2pi x)
double circle_gradient_inverse(double y, double c);
double quarter_gradient(double y, double c);       // y - c/(4pi) sin(4pi y)
double quarter_gradient_inverse(double y, double c);
double smooth_ramp(double t, double a, double b);  // C-infinity step from 0 (t<=a) to 1 (t>=b)
double bump(double t, double a, double b);         // C-infinity bump on (a,b), peak 1
// Time-t flow of dy/dt = -sin^2(pi (y - a) / (b - a)) on the band a < frac(y) < b.
double band_flow(double y, double a, double b, double time);
}  // namespace blocks

MapSpec gradient_torus_map(double c);
MapSpec orientable_two_saddle_map(double twist);
MapSpec nonorientable_chain_map(double contraction, double push, double twist);
MapSpec north_south_sphere_map();
MapSpec rotating_sink_map(int rotation_steps);
MapSpec flip_saddle_map(double a);

}  // namespace mss
