#pragma once

// JSON forms of the public value types. Integers outside the int64 range are
// written as decimal strings; readers accept either spelling.

#include "nsforge/construct.hpp"
#include "nsforge/exterior.hpp"
#include "nsforge/humbert.hpp"
#include "nsforge/normend.hpp"
#include "nsforge/riemann.hpp"
#include "nsforge/scan.hpp"

#include <json.hpp>

#include <string>

namespace nsforge::io {

using Json = nlohmann::ordered_json;

Json to_json(const BigInt& x);
BigInt big_from_json(const Json& j);

Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
/// Columns of `basis` as a list of vectors.
Json columns_to_json(const IntMatrix& basis);

Json to_json(const DivisorList& d);
DivisorList divisors_from_json(const Json& j);

/// {"n", "coeffs": [{"i","j","a"}]}, 1-based with i < j.
Json to_json(const TwoForm& eta);
/// Accepts "coeffs", "matrix" or both (which must agree). Throws ParseError.
TwoForm two_form_from_json(const Json& j);

std::string rational_string(const Rational& q);
/// "p", "p/q" or a finite decimal such as "-1.25e-3".
Rational parse_rational(const std::string& s);

Json to_json(const PeriodMatrix& tau);
/// Throws ParseError / NotInSiegel.
PeriodMatrix period_matrix_from_json(const Json& j);

Json to_json(const Polynomial& p);
Json to_json(const RelationSet& r);
Json to_json(const IntersectionProfile& p);
Json to_json(const NormMatrix& nm);
Json to_json(const SubvarietyReport& r);

Json to_json(const SingularDatum& s);
SingularDatum singular_from_json(const Json& j);

Json to_json(const EnumerationSpec& s);
EnumerationSpec enumeration_spec_from_json(const Json& j);

struct GlueInput {
  PolarizedFactor x, y;
  GluingSpec spec;
};

/// {"u", "type", "tauX", "tauY", "f", "g"}; f and g default to the identity.
/// The type of Y is the complement of "type" in dimension n_Y.
GlueInput glue_input_from_json(const Json& j);
Json to_json(const GluedVariety& g);

/// Parses text, mapping syntax errors to ParseError.
Json parse(const std::string& text);

/// Compact single-line dump.
std::string dump(const Json& j);

}  // namespace nsforge::io
