#pragma once

/**
 * @file parser.hpp
 * @brief Text <-> QuadraticPolynomial.
 *
 * Grammar (whitespace insignificant):
 *
 *     expr   := ['+'|'-'] term (('+'|'-') term)*
 *     term   := factor ('*' factor)*
 *     factor := base ('^' nat)?
 *     base   := var | literal | '(' expr ')'
 *
 * Variables are x1..xd, with aliases x, y, z, w when d <= 4. Literals follow
 * the domain: decimal integers everywhere, `i` and `<n>i` in Z[i], `t` in
 * F_p[t]. The input is expanded before the degree check, so
 * "(x+y)^2 - x^2" is accepted. Errors are ParseError with a byte offset.
 */

#include <cstddef>
#include <string>
#include <string_view>

#include "qdescent/domain.hpp"
#include "qdescent/fraction.hpp"
#include "qdescent/quadratic.hpp"

namespace qdescent {

QuadraticPolynomial parse_form(std::string_view text, const Domain& dom, std::size_t d);

/// Highest variable index mentioned in text (x=1, y=2, z=3, w=4, xk=k); at least 1.
std::size_t infer_dimension(std::string_view text);

/// Canonical text: graded-lex monomial order, explicit signs, "0" for zero.
std::string format_form(const QuadraticPolynomial& f);

/// A single domain element written in the literal syntax, e.g. "-3", "(1-2i)", "t^2+1".
Element parse_element(std::string_view text, const Domain& dom);

/// "a1,...,ad/b", "(a1,...,ad)/b" or "a1,...,ad" (b = 1). Kept as written, unreduced.
FractionPoint parse_point(std::string_view text, const Domain& dom);

} // namespace qdescent
