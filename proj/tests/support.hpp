#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "qdescent/domain.hpp"
#include "qdescent/fraction.hpp"
#include "qdescent/parser.hpp"
#include "qdescent/quadratic.hpp"

namespace qtest {

using namespace qdescent;

inline const Domain kZ = Domain::integers();
inline const Domain kZi = Domain::gaussian_integers();
inline const Domain kF2 = Domain::prime_field_polynomials(2);
inline const Domain kF3 = Domain::prime_field_polynomials(3);
inline const Domain kF5 = Domain::prime_field_polynomials(5);

inline Element z(long n) { return Element::integer(n); }
inline Element zi(long re, long im) { return Element::gaussian(re, im); }
inline Element poly(const Domain& dom, std::vector<std::int64_t> low_to_high) {
    return Element::fp_poly(dom, std::move(low_to_high));
}
inline Element el(const Domain& dom, const std::string& text) { return parse_element(text, dom); }

inline Point zpoint(std::initializer_list<long> xs) {
    Point p;
    for (long x : xs) p.push_back(z(x));
    return p;
}

inline FractionPoint zfrac(std::initializer_list<long> nums, long den) {
    return FractionPoint::unreduced(zpoint(nums), z(den));
}

inline QuadraticPolynomial form(const std::string& text, const Domain& dom, std::size_t d) {
    return parse_form(text, dom, d);
}

} // namespace qtest
