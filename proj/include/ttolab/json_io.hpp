#pragma once

#include <string>

#include <json.hpp>

#include "ttolab/isodecider.hpp"
#include "ttolab/verify.hpp"

namespace ttolab {

// Serialization of the documented file formats.  Complex numbers are [re, im]
// arrays throughout; sphere parameters additionally accept the string
// "infinity".  Parse errors raise std::invalid_argument naming the offending
// field.  Keys are emitted in sorted order and values depend only on the
// input, so equal inputs serialize byte for byte identically.

using Json = nlohmann::json;

Json complex_to_json(Complex value);
Complex complex_from_json(const Json& j, const std::string& field);

// {"gamma": [re, im], "zeros": [[re, im], ...]}
Json blaschke_to_json(const FiniteBlaschkeProduct& theta);
FiniteBlaschkeProduct blaschke_from_json(const Json& j);

Json parameter_to_json(const ExtendedParameter& a);
ExtendedParameter parameter_from_json(const Json& j, const std::string& field);

// {"theta1": ..., "a1": ..., "theta2": ..., "a2": ...}
Json query_to_json(const IsoQuery& query);
IsoQuery query_from_json(const Json& j);

// Verdict, reason, diagnostics and the witness when present.
Json decision_to_json(const IsoDecision& decision);

// {"rows": r, "cols": c, "entries": [[re, im], ...]} in row major order.
Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

// One atom per line with header location_re,location_im,weight.
std::string clark_to_csv(const ClarkMeasure& measure);

Json clark_to_json(const ClarkMeasure& measure);

Json report_to_json(const VerifyReport& report);

// Two space indentation and a trailing newline.
std::string dump_json(const Json& j);

}  // namespace ttolab
