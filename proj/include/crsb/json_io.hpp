#pragma once

#include <json.hpp>
#include <string>

#include "crsb/battery.hpp"
#include "crsb/credu.hpp"

namespace crsb {

using json = nlohmann::json;

/// Named building presets: "fano", "pg32", "hexagon", "b2", "a3", "g2",
/// "s0" (= rank1-2), "rank1-N"; '*' joins factors, e.g. "fano*s0".
BuildingPtr build_preset(const std::string& name);

json building_to_json(const Building& b, bool include_delta = true);
/// Reads {"coxeter_matrix":…, "chambers":[…], "adjacency":{…}, "delta":…};
/// recomputes delta by gallery BFS when absent. Restores preset provenance
/// when the "preset" field matches the stored tables exactly.
BuildingPtr building_from_json(const json& j);

json subcomplex_to_json(const Subcomplex& a);
Subcomplex subcomplex_from_json(const BuildingPtr& b, const json& j, bool close_faces);

json simplex_to_json(const Building& b, int sid);

json wd_report_to_json(const WdReport& r);
json convexity_to_json(const Building& b, const ConvexityCertificate& c);
json cr_to_json(const Building& b, const CrCertificate& c);
json decomposition_to_json(const Building& b, const Decomposition& d);
json violations_to_json(const std::vector<Violation>& v);
json battery_to_json(const BatteryResult& r);

/// DOT of the chamber graph (nodes = top simplices, edges = shared facets).
std::string subcomplex_dot(const Subcomplex& a);
/// DOT of the building's chamber graph with generator edge labels.
std::string building_dot(const Building& b);

/// Gram and reflection matrices as arrays of "p/q" strings.
json realization_debug_json(const CoxeterSystem& sys);

void write_file_atomic(const std::string& path, const std::string& content);
json read_json_file(const std::string& path);

}  // namespace crsb
