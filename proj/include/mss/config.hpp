#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "mss/catalog.hpp"
#include "mss/surface.hpp"

namespace mss {

// Parses the TOML subset used by map configs: [table] and [a.b] headers,
// key = value with strings, numbers, booleans and flat arrays, # comments.
nlohmann::ordered_json parse_toml(const std::string& text);

struct MapConfig {
    MapSpec map;
    AnalysisOptions options;
};

// Config layout (TOML or the equivalent JSON object):
//
//   [surface]  kind = "plane" | "torus" | "sphere"; seed_box = [x0, y0, x1, y1]
//   [map]      name; x, y (forward); inverse_x, inverse_y (optional);
//              x_chart1, y_chart1 (sphere chart w); any numeric key is a
//              parameter usable in the expressions
//   [options]  max_period, grid, budget, max_step, max_angle_deg, boundary_curves
MapConfig config_from_json(const nlohmann::ordered_json& j);
MapConfig load_config_text(const std::string& text, bool json);
// Chooses JSON for a .json extension or a leading '{', TOML otherwise.
MapConfig load_config_file(const std::string& path);

}  // namespace mss
