#pragma once

#include <json.hpp>
#include <string>

#include "psdeg/constraint_system.hpp"
#include "psdeg/ps_proof.hpp"

namespace psdeg {

using Json = nlohmann::ordered_json;

// {"n": 2, "ineqs": ["x1 - 1/2"], "eqs": ["x1 + x2 - 1"]}
Json system_to_json(const ConstraintSystem& Q);
// Accepts a bare system or any object carrying one under "system".
ConstraintSystem system_from_json(const Json& j);

// {"n":..., "target":"...", "squares":[{"J":[...], "roots":[...], "weights":[...]}],
//  "multipliers":[{"j":..., "t":"..."}], "ideal":[{"axiom":"...", "u":"..."}]}
// "weights" is optional and defaults to all ones.
Json proof_to_json(const PsProof& proof);
PsProof proof_from_json(const Json& j);

Json measures_to_json(const ProofMeasures& m);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace psdeg
