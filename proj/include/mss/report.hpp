#pragma once

#include <string>
#include <vector>

#include "mss/pipeline.hpp"

namespace mss {

// Rounds to 12 significant digits; -0 becomes 0.
double round12(double v);

// report.json text: keys map, orbits, separatrices, heteroclinic,
// orientability, beh, layers, quotients, theorem. Deterministic.
std::string report_json(const AnalysisReport& r);

// separatrix_id,vertex_index,chart_id,x1,x2
std::string separatrices_csv(const AnalysisReport& r);

std::string graph_dot(const AnalysisReport& r);

// Surface picture: orbits, separatrices, heteroclinic points colored by sign.
std::string phase_svg(const AnalysisReport& r);

// The fundamental annulus of one sink drawn as a ring: gluing circle dashed,
// projected circles colored per saddle, gluing crossings marked.
std::string quotient_svg(const AnalysisReport& r, const QuotientSummary& q);

// Writes the requested formats (json, csv, dot, svg) into dir; returns the
// written paths. Throws IoError.
std::vector<std::string> emit_outputs(const AnalysisReport& r, const std::string& dir,
                                      const std::vector<std::string>& formats);

}  // namespace mss
