#pragma once

#include <string_view>
#include <vector>

#include "ckm/graded_ring.hpp"

namespace ckm {

/// Parses a linear combination of basis labels such as "3*h", "2*(h,1) + (1,h)"
/// or "-1/2*s[2,1]". A bare number stands for that multiple of the unit.
/// Terms are separated by '+' or '-' outside brackets; labels themselves must
/// therefore not contain a top-level '+' or '-'. Throws MalformedExpression.
std::vector<Rational> parse_expression(const GradedBasisRing& ring, std::string_view text);

/// As parse_expression, additionally requiring a homogeneous result.
ClassVector parse_class(const RingPtr& ring, std::string_view text);

}  // namespace ckm
