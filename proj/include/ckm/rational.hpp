#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ckm {

/// Exact rational coefficient. All arithmetic in the library goes through this type.
using Rational = mpq_class;

/// Canonical lowest-terms form: "p/q", or "p" when q = 1.
std::string to_string(const Rational& value);

/// Accepts "p", "-p", "p/q" with q != 0; throws MalformedExpression otherwise.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace ckm
