#pragma once

#include <json.hpp>
#include <string>

#include "scissors/building.hpp"
#include "scissors/classical.hpp"
#include "scissors/dehncube.hpp"

namespace scissors {

using Json = nlohmann::json;

// ParseError carries the parser's byte position.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);

QuadSpacePtr geometry_from_json(const Json& j);
Json geometry_to_json(const QuadSpace& q);

// {"geometry": ..., "subspaces": [[row vectors] or a single vector], "closure": [...]}
FamilyPtr family_from_json(const Json& j, int closure_rounds = 3);
Json family_to_json(const SubspaceFamily& f);

// {"elements": [...], "table": [[...]], "matrices"?: [...], "character"?: [...]}
// or {"generators": [matrices]} for the closure of a set of isometries.
FiniteGroup group_from_json(const Json& j);
Json group_to_json(const FiniteGroup& g);

// {"base": label, "cells": [[{"label": ..., "faces": [[mask, index], ...]}, ...], ...]}
SimpSet simpset_from_json(const Json& j);
Json simpset_to_json(const SimpSet& s);

Json homology_to_json(const std::vector<HomologyGroup>& h);
Json int_matrix_to_json(const IntMat& m);
Json dehn_report_to_json(const DehnComplexData& d);

// {"flavor": ..., "vertices": [[decimal strings]], "simplices": [[indices..., sign]]}
Polytope polytope_from_json(const Json& j);
Json tensor_to_json(const DehnTensor& t, int digits = 40);

// {"flavor": ..., "x0": [decimal strings], "tuple": [[[decimal strings]]]}
struct CcsInput {
  Geometry flavor = Geometry::Spherical;
  RVec x0;
  std::vector<RMat> tuple;
};
CcsInput ccs_input_from_json(const Json& j);

}  // namespace scissors
