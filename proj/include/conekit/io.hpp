#pragma once

#include <string>

#include "json.hpp"

#include "conekit/cones.hpp"
#include "conekit/cpext.hpp"
#include "conekit/gpt.hpp"
#include "conekit/matrix.hpp"
#include "conekit/polytopes.hpp"
#include "conekit/protocol.hpp"

namespace conekit {

// Key order is preserved so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

// Exact rendering writes rationals as strings ("p" for integers, "p/q"
// otherwise); inexact rendering writes IEEE doubles.
Json json_number(const Rat& q, bool exact);
Json json_vector(const RatVec& v, bool exact);  // plain array
Json json_matrix(const RatMat& m, bool exact);  // {"rows", "cols", "data" row-major}
Json json_matrix(const DMat& m);
Json json_cone(const ConeOracle& k);  // {"kind", "ambient"}

// Cone elements: orthant elements as plain arrays (column vectors), matrix
// cone elements as matrix objects. Parsers accept both spellings.
Json json_element(const ConeOracle& k, const RatMat& x, bool exact);
RatMat element_from_json(const Json& j);

Json json_polytope(const ZeroOnePolytope& p);                // {"dim", "vertices"}
Json json_hrep(const HRep& h, bool exact);                   // {"A", "b", "equalities": {"A", "b"}}
Json json_certificate(const CpCertificate& c, bool exact);   // array of factor arrays
Json json_measurement(const GptSystem& sys, const Measurement& m, bool exact);
Json json_factorization(const ConeFactorization& f, bool exact);

// Parsers. Numbers may be JSON numbers or rational strings; doubles convert
// exactly (they are dyadic rationals).
Rat rat_from_json(const Json& j);
RatVec vector_from_json(const Json& j);
RatMat matrix_from_json(const Json& j);
ConeOracle cone_from_json(const Json& j);
ZeroOnePolytope polytope_from_json(const Json& j);
CpCertificate certificate_from_json(const Json& j);

struct MeasurementFile {
  GptSystem system;
  Measurement measurement;
};
MeasurementFile measurement_from_json(const Json& j);

ConeFactorization factorization_from_json(const Json& j);

Json load_json_file(const std::string& path);

}  // namespace conekit
