#pragma once

#include <string>
#include <vector>

#include "hypen/engine.hpp"
#include "json.hpp"

namespace hypen::cli {

// "ford:Q", "gford:Q" (Gaussian, one disk per --window) or a JSON file
ObstacleFamily load_obstacles(const std::string& spec, const std::vector<std::string>& windows = {});
ObstacleFamily family_from_json(const nlohmann::json& j);
nlohmann::ordered_json body_to_json(const ConvexBody& C);

// comma separated reals
std::vector<double> parse_reals(const std::string& s);
Boundary parse_boundary(const std::string& s);  // "inf", "x" or "x,y"

// half-plane scene as plain SVG 1.1
std::string svg_scene(const ObstacleFamily& fam, const std::vector<Geodesic>& iterates, const Geodesic& final_g);

}  // namespace hypen::cli
