#pragma once

#include <string>
#include <vector>

#include "mss/canonical.hpp"
#include "mss/catalog.hpp"
#include "mss/heteroclinic.hpp"
#include "mss/manifold.hpp"
#include "mss/order.hpp"
#include "mss/periodic.hpp"
#include "mss/quotient.hpp"

namespace mss {

struct PairSummary {
    int from = -1;
    int to = -1;
    int crossings = 0;
    int orbits = 0;
    std::vector<int> signs;  // distinct signs, ascending
};

struct CurveSummary {
    int separatrix = -1;
    int saddle = -1;
    Branch branch = Branch::UnstablePlus;
    int m_gamma = 1;
    int expected_winding = 0;
    ProjectedCurve curve;
    std::vector<ProjectedCurve> boundary;
    std::string error;
};

struct QuotientSummary {
    int sink = -1;
    QuotientChart chart;
    std::vector<CurveSummary> curves;
    std::string error;
};

struct TheoremVerdict {
    bool pass = true;
    bool orientable = false;
    int beh = 0;
    std::string diagnostic;
};

struct AnalysisReport {
    std::string map_name;
    SurfaceKind surface = SurfaceKind::Plane;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<Box> search_boxes;
    AnalysisOptions options;
    std::vector<PeriodicOrbit> orbits;
    std::vector<LinearizingChart> charts;  // every orbit point (saddles, sinks, sources)
    std::vector<Separatrix> separatrices;
    std::vector<HeteroclinicPoint> crossings;            // all detected points
    std::vector<HeteroclinicPoint> heteroclinic_orbits;  // one per orbit
    std::vector<PairSummary> pairs;
    int k_max = 0;
    Orientability orientability = Orientability::Vacuous;
    OrderGraph graph;
    std::vector<QuotientSummary> quotients;
    TheoremVerdict theorem;

    const PeriodicOrbit& orbit(int id) const { return orbits.at(static_cast<size_t>(id)); }
    std::vector<LinearizingChart> charts_of(OrbitKind kind) const;
    const LinearizingChart* chart_for(int orbit, int point_index) const;
};

AnalysisReport run_analyze(const MapSpec& m, const AnalysisOptions& opts);

// PASS unless the heteroclinic set is orientable and beh > 1.
TheoremVerdict evaluate_theorem(const AnalysisReport& r);

// Fault injection: flip one detected crossing's sign, or force every sign to
// the same value, then re-derive orientability and the theorem verdict.
void inject_flipped_sign(AnalysisReport& r, size_t crossing_index);
void inject_uniform_sign(AnalysisReport& r, int sign);

struct TheoremCheck {
    std::string name;
    bool pass = false;
    bool error = false;
    std::string orientability;
    int beh = 0;
    std::string diagnostic;
};

std::vector<TheoremCheck> run_verify_theorem(const std::vector<std::string>& names);

}  // namespace mss
