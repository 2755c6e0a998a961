#pragma once

#include "json.hpp"
#include "setcalc/dsl.hpp"

namespace setcalc {

nlohmann::ordered_json set_to_json(const ConicPolytope& s);
nlohmann::ordered_json scalar_to_json(const ScalarExpr& e);
nlohmann::ordered_json map_to_json(const MapExpr& e);
nlohmann::ordered_json problem_to_json(const ProblemFile& pf);
ProblemFile parse_json(const nlohmann::ordered_json& root);

}  // namespace setcalc
