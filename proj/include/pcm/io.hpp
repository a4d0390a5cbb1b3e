#pragma once

#include <json.hpp>
#include <string>

#include "pcm/modeler.hpp"
#include "pcm/verify.hpp"

namespace pcm {

using json = nlohmann::json;

// Complex numbers serialize as {"re": ..., "im": ...} objects everywhere.
json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

// Input spec: {"lambda": {re, im} (optional, default 1), "zeros": [{re, im}]}.
// lambda may be off unit modulus by up to 1e-9 and is renormalized.
FiniteBlaschkeProduct blaschke_from_json(const json& j);

std::string model_case_name(ModelCase kind);
ModelCase model_case_from_name(const std::string& name);

json model_to_json(const ConformalModel& m);

// Rebuilds the full model against the Blaschke product it was computed for;
// tracked-branch grids are reattached to their node lattice and seed.
ConformalModel model_from_json(const json& j, const FiniteBlaschkeProduct& B);

json report_to_json(const VerificationReport& r);

// {degree, critical_points: [{z, multiplicity}], critical_values: [k]}.
json critical_report_to_json(const FiniteBlaschkeProduct& B);

json load_json_file(const std::string& path);
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace pcm
