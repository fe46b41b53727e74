#pragma once

#include <string>
#include <string_view>

#include "pd4/rational_expr.hpp"

namespace pd4::alg {

// Canonical text form: terms in descending graded-lex order, separated by
// " + " / " - "; each term is "coeff*name^exp*..." with the coefficient as
// "num/den" (integer when den==1), a suppressed unit coefficient, and
// suppressed "^1". The zero polynomial prints "0". parse(print(p)) == p.
std::string to_string(const Polynomial& p);

// "(num) / (den)" for proper quotients, the numerator's form otherwise.
std::string to_string(const RationalExpr& e);

// Throws std::invalid_argument on malformed input, unknown variable names,
// or a negative exponent on anything but t.
Polynomial poly_from_string(std::string_view s);

}  // namespace pd4::alg
