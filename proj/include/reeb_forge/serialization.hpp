#pragma once

// Text and JSON forms shared by the CLI and the Python bindings.
//
//   module text   "Z^2 + Z/2 + Z/4", "Z", "0", "Q^3", "F2^1"
//   manifold      {"kind":"lens","p":3,"q":1}, {"kind":"product","factors":[...]}, ...
//   script        {"ambient":n,"ops":[{"type":"normal","manifold":...}|{"type":"wedge","summands":[...]}]}
//   profile       {"ambient":n,"homology":[{"rank":r,"torsion":[...]},...]}
//   plan report   {"script":...,"achieved":[...],"target_met":b,"notes":[...]}

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "reeb_forge/bubbling_engine.hpp"
#include "reeb_forge/manifold_catalog.hpp"
#include "reeb_forge/pid_algebra.hpp"
#include "reeb_forge/realization_planner.hpp"

namespace reeb::io {

using json = nlohmann::json;

std::string format_module(const algebra::FGModule& m);
std::string format_graded(const algebra::GradedModule& g);
/// Parses the module text form. The ring is taken from the symbols used
/// (Z, Q or F<p>); "0" yields the zero module over `fallback`.
algebra::FGModule parse_module(std::string_view text, algebra::Ring fallback = algebra::Ring::integers());

json module_to_json(const algebra::FGModule& m);
algebra::FGModule module_from_json(const json& j);
json graded_to_json(const algebra::GradedModule& g);
algebra::GradedModule graded_from_json(const json& j);

using catalog::GeneratingSpace;

json manifold_spec_to_json(const catalog::ManifoldSpec& spec);
catalog::ManifoldSpec manifold_spec_from_json(const json& j);
json generating_to_json(const GeneratingSpace& g);
GeneratingSpace generating_from_json(const json& j);
/// Compact form used on the command line: "lens:3,1", "sphere:2",
/// "surface:1", "hsphere:5", "point"; factors joined by " x ", bouquet
/// summands by " v ". A leading '{' is parsed as JSON instead.
GeneratingSpace parse_space(std::string_view text);

json op_to_json(const engine::BubblingOp& op);
engine::BubblingOp op_from_json(const json& j);
json script_to_json(const engine::BubblingScript& s);
engine::BubblingScript script_from_json(const json& j);
json profile_to_json(const engine::ReebProfile& p);
engine::ReebProfile profile_from_json(const json& j);
json plan_report_to_json(const planner::PlanReport& r);

}  // namespace reeb::io
