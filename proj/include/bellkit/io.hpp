#pragma once

#include <string>

#include "json.hpp"

#include "bellkit/classify.hpp"
#include "bellkit/dilation.hpp"
#include "bellkit/projgen.hpp"
#include "bellkit/selftest.hpp"
#include "bellkit/strategy.hpp"

namespace bellkit {

// Serialized form uses insertion-ordered objects so that emitted documents
// are byte-stable across runs and platforms.
using Json = nlohmann::ordered_json;

// Complex scalars serialize as [re, im]; matrices as arrays of rows; vectors
// as flat arrays of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

// Strategy document:
//   {
//     "dims": [dim_a, dim_b],
//     "state": [[re, im], ...],
//     "alice": [ {"input": "x0", "effects": [matrix, ...]}, ... ],
//     "bob":   [ {"input": "y0", "effects": [matrix, ...]}, ... ]
//   }
// Input labels must be "x0", "x1", ... / "y0", "y1", ... in positional order.
Json strategy_to_json(const Strategy& s);
Strategy strategy_from_json(const Json& j);

// Word document: letters as [input label, outcome label] pairs in
// application order (first-applied first), with the party carried by the
// label prefix: [["x0","a1"],["y2","b0"]].
Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

// File / stream helpers.  Throws std::runtime_error on unreadable files and
// propagates nlohmann parse errors for malformed documents.
Strategy read_strategy_file(const std::string& path);
void write_strategy_file(const std::string& path, const Strategy& s);

// Dilation witness document:
//   { "U_A": matrix, "U_B": matrix, "aux0": vector, "aux1": vector }
// (aux1 may be an empty array for standard dilations).
Json witness_to_json(const DilationWitness& w);
DilationWitness witness_from_json(const Json& j);
DilationWitness read_witness_file(const std::string& path);
void write_witness_file(const std::string& path, const DilationWitness& w);

// Projection family document:
//   { "n": int, "expected_real_dim": int, "projections": [matrix, ...] }
Json family_to_json(const ProjectionFamily& fam);
ProjectionFamily family_from_json(const Json& j);

// Seesaw scenario document:
//   { "dim_a": int, "dim_b": int, "n_inputs_a": int, "n_inputs_b": int,
//     "functional": { "offset": num,
//                     "terms": [ {"x":…,"y":…,"a":…,"b":…,"c":…}, … ] } }
Json scenario_to_json(const SeesawScenario& sc);
SeesawScenario scenario_from_json(const Json& j);
SeesawScenario read_scenario_file(const std::string& path);

// Report serializers (output only).
Json residual_report_to_json(const ResidualReport& r);
Json realness_report_to_json(const RealnessReport& r);
Json seesaw_result_to_json(const SeesawResult& r);

}  // namespace bellkit
