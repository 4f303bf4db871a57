#pragma once

// Text formats and JSON reports.
//
// Set files: line 1 is "q p e modulus-code"; each further line holds one
// element "a-code b-code". Blank lines and lines starting with '#' are ignored.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "redei/affgroup.hpp"
#include "redei/ff.hpp"
#include "redei/plane.hpp"
#include "redei/poly.hpp"

namespace redei {

using Json = nlohmann::ordered_json;

/// Field of order q (a prime power). Throws InvalidArgument.
FieldSpec field_for_order(std::uint64_t q);

/// "q p e modulus-code".
std::string field_header(const FieldSpec& field);

PlanePointSet parse_point_set(std::istream& in);
PlanePointSet parse_point_set(std::string_view text);
AffSet parse_aff_set(std::istream& in);
AffSet parse_aff_set(std::string_view text);

std::string format_point_set(const PlanePointSet& A);
std::string format_aff_set(const AffSet& A);

/// Space-separated coefficient codes, constant term first; "" for zero.
std::string format_polynomial(const Polynomial& f);
Polynomial parse_polynomial(const FieldSpec& field, std::string_view text);

/// "inf" or the decimal code.
std::string format_slope(const Slope& s);
Slope parse_slope(const FieldSpec& field, std::string_view text);

/// Full per-set analysis: {q, size, D, n, collinear, l1, l2, lower, upper, holds, exempt}.
Json direction_json(const PlanePointSet& A);
Json redei_json(const PlanePointSet& A, FieldElement y);
Json bounds_json(const PlanePointSet& A);
Json classification_json(const AffSet& A, const ClassificationReport& report);

}  // namespace redei
