#pragma once

#include <string>

#include <json.hpp>

#include "opschur/block_matrix.hpp"
#include "opschur/op_measures.hpp"
#include "opschur/toeplitz_multipliers.hpp"

// JSON encodings (round-trips are bit-exact; doubles use shortest-roundtrip
// formatting):
//   complex   [re, im]
//   operator  row-major array of rows of complex entries
//   measure   {"type":"discrete","d":d,"atoms":[{"t":angle,"W":op},...]}
//             {"type":"density","d":d,"coeffs":{"-1":op,...}}
//             {"type":"lazy","kind":"spectral","d":d}
//   matrix    {"rows":N,"cols":M,"d":d,"blocks":[[op,...],...]}
//   toeplitz  {"measure":measure,"N":n}

namespace opschur {

nlohmann::json operator_to_json(const Operator& w);
Operator operator_from_json(const nlohmann::json& j);

nlohmann::json measure_to_json(const OpMeasure& mu);
OpMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const OpMatrix& a);
OpMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json toeplitz_spec_to_json(const ToeplitzSpec& spec);
ToeplitzSpec toeplitz_spec_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

}  // namespace opschur
