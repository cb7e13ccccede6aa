#pragma once

// JSON documents for forms, relations, contractions and sequences.
//
// Complex numbers are [re, im] pairs and matrices are row-major nested arrays.
// Every real number is written with 12 significant digits, so emitting a
// parsed document reproduces it byte for byte.
//
//   {"kind":"form","ambient_dim":2,"domain_basis":[[[1,0]],[[0,0]]],"matrix":[[[2,0]]]}

#include <string>
#include <variant>

#include "json.hpp"

#include "formkit/decomp.hpp"
#include "formkit/form.hpp"
#include "formkit/monotone.hpp"
#include "formkit/relation.hpp"

namespace formkit::io {

using Json = nlohmann::json;

/// x rounded to 12 significant digits, with -0 mapped to 0.
double round12(double x);

Json matrix_to_json(const Matrix& m);
/// `rows` x `cols` expected; throws a parse error on shape or type mismatch.
Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols, const char* field);

Json to_json(const HermitianForm& t);
Json to_json(const LinearRelation& r);
Json to_json(const ContractionParam& k);
Json to_json(const FormSequence& seq);

HermitianForm form_from_json(const Json& j, const Tolerance& tol = {});
LinearRelation relation_from_json(const Json& j, const Tolerance& tol = {});
ContractionParam contraction_from_json(const Json& j, const Tolerance& tol = {});
FormSequence sequence_from_json(const Json& j, const Tolerance& tol = {});

using Document = std::variant<HermitianForm, LinearRelation, ContractionParam, FormSequence>;

/// Dispatches on "kind". Malformed text or structure is a parse error; values
/// that break a type invariant raise an invariant error.
Document parse_document(const std::string& text, const Tolerance& tol = {});
Document read_document(const std::string& path, const Tolerance& tol = {});

/// Deterministic text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
void write_file(const std::string& path, const Json& j);

}  // namespace formkit::io
